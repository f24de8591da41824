// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_FIELD_HPP
#define OCRBENCH_FIELD_HPP

#include <array>
#include <optional>
#include <string_view>

namespace ocrbench {

/// Target text region on a package. `unclassified` only appears as a
/// classifier outcome, never in ground truth or sectioned output.
enum class FieldType { ingredients, nfp, unclassified };

inline constexpr std::array<FieldType, 2> target_fields{FieldType::ingredients, FieldType::nfp};

constexpr std::string_view to_string(FieldType f) noexcept
{
    switch (f) {
    case FieldType::ingredients: return "ingredients";
    case FieldType::nfp: return "nfp";
    case FieldType::unclassified: return "unclassified";
    }
    return "unclassified";
}

/// Accepts exactly "ingredients" or "nfp".
constexpr std::optional<FieldType> parse_field_type(std::string_view s) noexcept
{
    if (s == "ingredients") {
        return FieldType::ingredients;
    }
    if (s == "nfp") {
        return FieldType::nfp;
    }
    return std::nullopt;
}

/// Presence flags for the two target fields of one product.
struct FieldSet {
    bool ingredients = false;
    bool nfp = false;

    constexpr bool has(FieldType f) const noexcept
    {
        return f == FieldType::ingredients ? ingredients : f == FieldType::nfp && nfp;
    }

    constexpr void set(FieldType f) noexcept
    {
        if (f == FieldType::ingredients) {
            ingredients = true;
        } else if (f == FieldType::nfp) {
            nfp = true;
        }
    }

    constexpr bool any() const noexcept { return ingredients || nfp; }

    friend constexpr bool operator==(const FieldSet&, const FieldSet&) = default;
};

} // namespace ocrbench

#endif // OCRBENCH_FIELD_HPP
