#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "vulture/errors.hpp"

namespace vulture::tlsh {

// 128 effective buckets, 32 body bytes, 1 checksum byte, no version prefix:
// the classic 70-hex-character digest.
inline constexpr int kWindowSize = 5;
inline constexpr int kEffectiveBuckets = 128;
inline constexpr int kCodeSize = 32;
inline constexpr std::size_t kMinInputLength = 50;
inline constexpr std::size_t kDigestHexLength = 70;

namespace detail {

    inline constexpr std::array<std::uint8_t, 256> kPearsonTable = {
        1, 87, 49, 12, 176, 178, 102, 166, 121, 193, 6, 84, 249, 230, 44, 163,
        14, 197, 213, 181, 161, 85, 218, 80, 64, 239, 24, 226, 236, 142, 38, 200,
        110, 177, 104, 103, 141, 253, 255, 50, 77, 101, 81, 18, 45, 96, 31, 222,
        25, 107, 190, 70, 86, 237, 240, 34, 72, 242, 20, 214, 244, 227, 149, 235,
        97, 234, 57, 22, 60, 250, 82, 175, 208, 5, 127, 199, 111, 62, 135, 248,
        174, 169, 211, 58, 66, 154, 106, 195, 245, 171, 17, 187, 182, 179, 0, 243,
        132, 56, 148, 75, 128, 133, 158, 100, 130, 126, 91, 13, 153, 246, 216, 219,
        119, 68, 223, 78, 83, 88, 201, 99, 122, 11, 92, 32, 136, 114, 52, 10,
        138, 30, 48, 183, 156, 35, 61, 26, 143, 74, 251, 94, 129, 162, 63, 152,
        170, 7, 115, 167, 241, 206, 3, 150, 55, 59, 151, 220, 90, 53, 23, 131,
        125, 173, 15, 238, 79, 95, 89, 16, 105, 137, 225, 224, 217, 160, 37, 123,
        118, 73, 2, 157, 46, 116, 9, 145, 134, 228, 207, 212, 202, 215, 69, 229,
        27, 188, 67, 124, 168, 252, 42, 4, 29, 108, 21, 247, 19, 205, 39, 203,
        233, 40, 186, 147, 198, 192, 155, 33, 164, 191, 98, 204, 165, 180, 117, 76,
        140, 36, 210, 172, 41, 54, 159, 8, 185, 232, 113, 196, 231, 47, 146, 120,
        51, 65, 28, 144, 254, 221, 93, 189, 194, 139, 112, 43, 71, 109, 184, 209
    };

    inline std::uint8_t b_mapping(std::uint8_t salt, std::uint8_t a, std::uint8_t b, std::uint8_t c)
    {
        std::uint8_t h = 0;
        h = kPearsonTable[h ^ salt];
        h = kPearsonTable[h ^ a];
        h = kPearsonTable[h ^ b];
        h = kPearsonTable[h ^ c];
        return h;
    }

    inline std::uint8_t swap_nibbles(std::uint8_t x)
    {
        return static_cast<std::uint8_t>(((x & 0x0F) << 4) | ((x & 0xF0) >> 4));
    }

    // Logarithmic length bucketing.
    inline std::uint8_t l_capturing(std::size_t len)
    {
        constexpr double kLog15 = 0.4054651;
        constexpr double kLog13 = 0.26236426;
        constexpr double kLog11 = 0.095310180;
        double l = std::log(static_cast<double>(len));
        int i;
        if (len <= 656)
            i = static_cast<int>(std::floor(l / kLog15));
        else if (len <= 3199)
            i = static_cast<int>(std::floor(l / kLog13 - 8.72777));
        else
            i = static_cast<int>(std::floor(l / kLog11 - 62.5472));
        return static_cast<std::uint8_t>(i & 0xFF);
    }

    // Distance contribution of one body byte pair: each 2-bit lane differs by
    // |a-b|, except an extreme 0<->3 swing which costs 6.
    inline int bit_pairs_diff(std::uint8_t x, std::uint8_t y)
    {
        static const auto table = [] {
            std::array<std::array<std::uint8_t, 256>, 256> t {};
            for (int i = 0; i < 256; ++i) {
                for (int j = 0; j < 256; ++j) {
                    int a = i, b = j, d = 0;
                    for (int z = 0; z < 4; ++z) {
                        int delta = std::abs(a % 4 - b % 4);
                        d += (delta == 3) ? 6 : delta;
                        a /= 4;
                        b /= 4;
                    }
                    t[i][j] = static_cast<std::uint8_t>(d);
                }
            }
            return t;
        }();
        return table[x][y];
    }

    inline int mod_diff(int a, int b, int range)
    {
        int d = std::abs(a - b);
        return std::min(d, range - d);
    }

    inline int hex_value(char c)
    {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        throw error("invalid hex character in digest");
    }

} // namespace detail

struct Digest {
    std::uint8_t checksum = 0;
    std::uint8_t lvalue = 0;
    std::uint8_t q1_ratio = 0;
    std::uint8_t q2_ratio = 0;
    std::array<std::uint8_t, kCodeSize> code {};

    std::string to_hex() const
    {
        static const char* digits = "0123456789ABCDEF";
        std::string out;
        out.reserve(kDigestHexLength);
        auto emit = [&](std::uint8_t b) {
            out += digits[b >> 4];
            out += digits[b & 0xF];
        };
        emit(detail::swap_nibbles(checksum));
        emit(detail::swap_nibbles(lvalue));
        emit(detail::swap_nibbles(static_cast<std::uint8_t>((q1_ratio & 0xF) | (q2_ratio << 4))));
        for (int i = kCodeSize - 1; i >= 0; --i)
            emit(code[i]);
        return out;
    }

    static Digest from_hex(std::string_view hex)
    {
        if (hex.size() != kDigestHexLength)
            throw error("tlsh digest must be 70 hex characters");
        std::array<std::uint8_t, 35> bytes {};
        for (std::size_t i = 0; i < bytes.size(); ++i)
            bytes[i] = static_cast<std::uint8_t>(detail::hex_value(hex[2 * i]) * 16 + detail::hex_value(hex[2 * i + 1]));
        Digest d;
        d.checksum = detail::swap_nibbles(bytes[0]);
        d.lvalue = detail::swap_nibbles(bytes[1]);
        std::uint8_t qb = detail::swap_nibbles(bytes[2]);
        d.q1_ratio = qb & 0x0F;
        d.q2_ratio = (qb >> 4) & 0x0F;
        for (int i = 0; i < kCodeSize; ++i)
            d.code[i] = bytes[3 + (kCodeSize - 1 - i)];
        return d;
    }
};

/// Computes the digest of `data`, or nullopt when the input is too short or
/// too uniform for a meaningful hash (fewer than half the buckets populated,
/// or an all-zero third quartile).
inline std::optional<Digest> hash_bytes(std::string_view data)
{
    if (data.size() < kMinInputLength)
        return std::nullopt;

    std::array<std::uint32_t, 256> buckets {};
    std::array<std::uint8_t, kWindowSize> window {};
    std::uint8_t checksum = 0;

    for (std::size_t i = 0; i < data.size(); ++i) {
        std::size_t j = i % kWindowSize;
        window[j] = static_cast<std::uint8_t>(data[i]);
        if (i >= 4) {
            auto w = [&](std::size_t back) { return window[(j + kWindowSize - back) % kWindowSize]; };
            std::uint8_t cur = w(0), p1 = w(1), p2 = w(2), p3 = w(3), p4 = w(4);
            checksum = detail::b_mapping(0, cur, p1, checksum);
            ++buckets[detail::b_mapping(2, cur, p1, p2)];
            ++buckets[detail::b_mapping(3, cur, p1, p3)];
            ++buckets[detail::b_mapping(5, cur, p2, p3)];
            ++buckets[detail::b_mapping(7, cur, p2, p4)];
            ++buckets[detail::b_mapping(11, cur, p1, p4)];
            ++buckets[detail::b_mapping(13, cur, p3, p4)];
        }
    }

    int nonzero = 0;
    for (int i = 0; i < kEffectiveBuckets; ++i)
        if (buckets[i] > 0)
            ++nonzero;
    if (nonzero <= kEffectiveBuckets / 2)
        return std::nullopt;

    std::array<std::uint32_t, kEffectiveBuckets> sorted {};
    std::copy(buckets.begin(), buckets.begin() + kEffectiveBuckets, sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    std::uint32_t q1 = sorted[kEffectiveBuckets / 4 - 1];
    std::uint32_t q2 = sorted[kEffectiveBuckets / 2 - 1];
    std::uint32_t q3 = sorted[kEffectiveBuckets - kEffectiveBuckets / 4 - 1];
    if (q3 == 0)
        return std::nullopt;

    Digest d;
    d.checksum = checksum;
    d.lvalue = detail::l_capturing(data.size());
    d.q1_ratio = static_cast<std::uint8_t>((q1 * 100 / q3) % 16);
    d.q2_ratio = static_cast<std::uint8_t>((q2 * 100 / q3) % 16);
    for (int i = 0; i < kCodeSize; ++i) {
        std::uint8_t h = 0;
        for (int j = 0; j < 4; ++j) {
            std::uint32_t k = buckets[4 * i + j];
            if (q3 < k)
                h += 3 << (j * 2);
            else if (q2 < k)
                h += 2 << (j * 2);
            else if (q1 < k)
                h += 1 << (j * 2);
        }
        d.code[i] = h;
    }
    return d;
}

/// Reference distance between two digests; `length_diff` folds the encoded
/// input lengths into the score (the library default).
inline int distance(const Digest& a, const Digest& b, bool length_diff = true)
{
    int diff = 0;
    if (length_diff) {
        int ldiff = detail::mod_diff(a.lvalue, b.lvalue, 256);
        if (ldiff == 1)
            diff += 1;
        else if (ldiff > 1)
            diff += ldiff * 12;
    }
    int q1diff = detail::mod_diff(a.q1_ratio, b.q1_ratio, 16);
    diff += (q1diff <= 1) ? q1diff : (q1diff - 1) * 12;
    int q2diff = detail::mod_diff(a.q2_ratio, b.q2_ratio, 16);
    diff += (q2diff <= 1) ? q2diff : (q2diff - 1) * 12;
    if (a.checksum != b.checksum)
        diff += 1;
    for (int i = 0; i < kCodeSize; ++i)
        diff += detail::bit_pairs_diff(a.code[i], b.code[i]);
    return diff;
}

inline int distance_hex(std::string_view a, std::string_view b, bool length_diff = true)
{
    return distance(Digest::from_hex(a), Digest::from_hex(b), length_diff);
}

} // namespace vulture::tlsh
