// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_ERROR_HPP
#define OCRBENCH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ocrbench {

enum class Errc {
    malformed_filename,
    missing_column,
    duplicate_image,
    malformed_row,
    unknown_field_type,
    empty_ground_truth,
    empty_needle,
    empty_reference,
    field_mismatch,
    empty_input,
    no_products_with_field,
    missing_timing,
    io_failure,
    adapter_failure,
    invalid_config,
};

constexpr std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::malformed_filename: return "MalformedFilename";
    case Errc::missing_column: return "MissingColumn";
    case Errc::duplicate_image: return "DuplicateImage";
    case Errc::malformed_row: return "MalformedRow";
    case Errc::unknown_field_type: return "UnknownFieldType";
    case Errc::empty_ground_truth: return "EmptyGroundTruth";
    case Errc::empty_needle: return "EmptyNeedle";
    case Errc::empty_reference: return "EmptyReference";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::empty_input: return "EmptyInput";
    case Errc::no_products_with_field: return "NoProductsWithField";
    case Errc::missing_timing: return "MissingTiming";
    case Errc::io_failure: return "IoFailure";
    case Errc::adapter_failure: return "AdapterFailure";
    case Errc::invalid_config: return "InvalidConfig";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the Errc kinds so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace ocrbench

#endif // OCRBENCH_ERROR_HPP
