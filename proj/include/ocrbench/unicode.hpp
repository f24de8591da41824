// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_UNICODE_HPP
#define OCRBENCH_UNICODE_HPP

#include <clocale>
#include <cstddef>
#include <cstdint>
#include <locale.h>
#include <string>
#include <string_view>
#include <wctype.h>

namespace ocrbench::unicode {

inline constexpr char32_t replacement_char = U'�';

/// Decodes UTF-8 into scalar values. Each byte that does not start a
/// well-formed sequence becomes one U+FFFD.
inline std::u32string decode(std::string_view s)
{
    std::u32string out;
    out.reserve(s.size());
    const auto* p = reinterpret_cast<const unsigned char*>(s.data());
    const std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char b0 = p[i];
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        std::size_t len = 0;
        char32_t cp = 0;
        char32_t min = 0;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2; cp = b0 & 0x1F; min = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3; cp = b0 & 0x0F; min = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4; cp = b0 & 0x07; min = 0x10000;
        }
        bool ok = len != 0 && i + len <= n;
        for (std::size_t k = 1; ok && k < len; ++k) {
            if ((p[i + k] & 0xC0) != 0x80) {
                ok = false;
            } else {
                cp = (cp << 6) | (p[i + k] & 0x3F);
            }
        }
        if (ok && (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) {
            ok = false;
        }
        if (ok) {
            out.push_back(cp);
            i += len;
        } else {
            out.push_back(replacement_char);
            ++i;
        }
    }
    return out;
}

inline void append(std::string& out, char32_t cp)
{
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode(std::u32string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) {
        append(out, cp);
    }
    return out;
}

/// Length in Unicode scalar values.
inline std::size_t length(std::string_view s)
{
    return decode(s).size();
}

namespace detail {

// glibc's C.UTF-8 LC_CTYPE tables cover the full Unicode repertoire. The
// locale object is private to this library; the global locale is untouched.
class CType {
public:
    static const CType& instance()
    {
        static const CType ctype;
        return ctype;
    }

    bool has_tables() const noexcept { return loc_ != locale_t{}; }

    char32_t to_lower(char32_t c) const noexcept
    {
        if (c < 0x80) {
            return (c >= 'A' && c <= 'Z') ? c + 32 : c;
        }
        if (has_tables()) {
            return static_cast<char32_t>(towlower_l(static_cast<wint_t>(c), loc_));
        }
        // Latin-1 fallback: U+00C0..U+00DE except U+00D7.
        if (c >= 0xC0 && c <= 0xDE && c != 0xD7) {
            return c + 32;
        }
        return c;
    }

    bool is_alpha(char32_t c) const noexcept
    {
        if (c < 0x80) {
            return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
        }
        if (has_tables()) {
            return iswalpha_l(static_cast<wint_t>(c), loc_) != 0;
        }
        return c >= 0xC0 && c <= 0xFF && c != 0xD7 && c != 0xF7;
    }

    bool is_digit(char32_t c) const noexcept
    {
        if (c < 0x80) {
            return c >= '0' && c <= '9';
        }
        return has_tables() && iswalnum_l(static_cast<wint_t>(c), loc_) != 0 &&
               iswalpha_l(static_cast<wint_t>(c), loc_) == 0;
    }

    bool is_space(char32_t c) const noexcept
    {
        if (c == ' ' || (c >= '\t' && c <= '\r') || c == 0xA0) {
            return true;
        }
        return c >= 0x80 && has_tables() && iswspace_l(static_cast<wint_t>(c), loc_) != 0;
    }

    CType(const CType&) = delete;
    CType& operator=(const CType&) = delete;

private:
    CType()
    {
        for (const char* name : {"C.UTF-8", "C.utf8", "en_US.UTF-8"}) {
            loc_ = newlocale(LC_CTYPE_MASK, name, locale_t{});
            if (loc_ != locale_t{}) {
                break;
            }
        }
    }

    ~CType()
    {
        if (loc_ != locale_t{}) {
            freelocale(loc_);
        }
    }

    locale_t loc_{};
};

} // namespace detail

inline char32_t to_lower(char32_t c) noexcept { return detail::CType::instance().to_lower(c); }
inline bool is_letter(char32_t c) noexcept { return detail::CType::instance().is_alpha(c); }
inline bool is_digit(char32_t c) noexcept { return detail::CType::instance().is_digit(c); }
inline bool is_space(char32_t c) noexcept { return detail::CType::instance().is_space(c); }

} // namespace ocrbench::unicode

#endif // OCRBENCH_UNICODE_HPP
