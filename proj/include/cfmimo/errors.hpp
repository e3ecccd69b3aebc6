// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cfmimo {

/// Thrown when a configuration field violates its documented range.
/// The message names the offending field and the constraint.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(const std::string& field, const std::string& constraint)
        : std::invalid_argument(field + ": " + constraint), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace cfmimo
