#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include <openssl/sha.h>

#include "vulture/core/tlsh.hpp"
#include "vulture/errors.hpp"

namespace vulture {

enum class DigestAlgorithm {
    Tlsh,      // 70-hex fuzzy digest
    ExactHash, // sha256 sentinel for inputs the fuzzy hash cannot cover
};

/// Distance reported for exact-hash digests that are not equal: effectively
/// "not comparable, arbitrarily far".
inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();

struct FuzzyDigest {
    DigestAlgorithm algorithm = DigestAlgorithm::ExactHash;
    std::string hex;

    bool operator==(const FuzzyDigest&) const = default;
    bool operator<(const FuzzyDigest& o) const
    {
        return std::tie(algorithm, hex) < std::tie(o.algorithm, o.hex);
    }
};

inline std::string sha256_hex(std::string_view data)
{
    unsigned char md[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * SHA256_DIGEST_LENGTH);
    for (unsigned char b : md) {
        out += digits[b >> 4];
        out += digits[b & 0xF];
    }
    return out;
}

/// Digest of a normalized body.  Bodies of at least 50 bytes get a TLSH
/// digest; shorter or insufficiently varied bodies fall back to the exact
/// sha256 sentinel, which only ever matches itself.
inline FuzzyDigest digest(std::string_view normalized_body)
{
    if (normalized_body.size() >= tlsh::kMinInputLength) {
        if (auto d = tlsh::hash_bytes(normalized_body))
            return { DigestAlgorithm::Tlsh, d->to_hex() };
    }
    return { DigestAlgorithm::ExactHash, sha256_hex(normalized_body) };
}

/// Reference TLSH distance between two fuzzy digests; 0 / infinite for exact
/// hashes.  Mixing algorithms is a contract violation.
inline int distance(const FuzzyDigest& a, const FuzzyDigest& b)
{
    if (a.algorithm != b.algorithm)
        throw algorithm_mismatch("cannot compare TLSH digest with exact-hash sentinel");
    if (a.algorithm == DigestAlgorithm::ExactHash)
        return a.hex == b.hex ? 0 : kInfiniteDistance;
    return tlsh::distance_hex(a.hex, b.hex);
}

/// Distance when the digests are comparable, infinite otherwise.  The
/// similarity scans use this so that mixed-algorithm pairs simply never
/// count as similar.
inline int distance_or_infinite(const FuzzyDigest& a, const FuzzyDigest& b)
{
    if (a.algorithm != b.algorithm)
        return kInfiniteDistance;
    return distance(a, b);
}

} // namespace vulture
