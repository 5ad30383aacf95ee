#pragma once

// Data-parallel inner loops shared by the permutation, subgroup and wreath
// arithmetic. Every kernel has a portable scalar reference implementation and
// an AVX2 variant; the active backend is chosen once at startup from CPUID and
// can be overridden with AUTOMIZER_SIMD=scalar|avx2 or set_backend().

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace automizer::kernels {

enum class Backend { Scalar, Avx2 };

/// Backend used by the dispatching entry points below.
Backend active_backend() noexcept;

/// Forces a backend. Requesting Avx2 on a CPU without it falls back to Scalar
/// and returns false.
bool set_backend(Backend b) noexcept;

bool avx2_available() noexcept;
std::string_view backend_name(Backend b) noexcept;

/// out[i] = table[index[i]]. Permutation composition p∘q is gather(p, q).
void gather(std::span<const uint32_t> table, std::span<const uint32_t> index,
            std::span<uint32_t> out);

/// out[i] = mul[a[i] * order + b[i]]; componentwise product in a group given
/// by its row-major multiplication table.
void table_multiply(std::span<const uint32_t> mul, std::size_t order,
                    std::span<const uint32_t> a, std::span<const uint32_t> b,
                    std::span<uint32_t> out);

/// out[p[i]] = i.
void invert_permutation(std::span<const uint32_t> p, std::span<uint32_t> out);

// Word-level bitset kernels (subgroup element sets).
void bits_and(std::span<const uint64_t> a, std::span<const uint64_t> b,
              std::span<uint64_t> out);
void bits_or(std::span<const uint64_t> a, std::span<const uint64_t> b,
             std::span<uint64_t> out);
std::size_t popcount(std::span<const uint64_t> a);
/// True iff every bit of a is set in b.
bool bits_subset(std::span<const uint64_t> a, std::span<const uint64_t> b);

/// Reference implementations, always scalar. Used by the equivalence tests.
namespace scalar {
void gather(const uint32_t* table, const uint32_t* index, uint32_t* out,
            std::size_t n);
void table_multiply(const uint32_t* mul, std::size_t order, const uint32_t* a,
                    const uint32_t* b, uint32_t* out, std::size_t n);
void bits_and(const uint64_t* a, const uint64_t* b, uint64_t* out,
              std::size_t n);
void bits_or(const uint64_t* a, const uint64_t* b, uint64_t* out,
             std::size_t n);
std::size_t popcount(const uint64_t* a, std::size_t n);
bool bits_subset(const uint64_t* a, const uint64_t* b, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void gather(const uint32_t* table, const uint32_t* index, uint32_t* out,
            std::size_t n);
void table_multiply(const uint32_t* mul, std::size_t order, const uint32_t* a,
                    const uint32_t* b, uint32_t* out, std::size_t n);
void bits_and(const uint64_t* a, const uint64_t* b, uint64_t* out,
              std::size_t n);
void bits_or(const uint64_t* a, const uint64_t* b, uint64_t* out,
             std::size_t n);
std::size_t popcount(const uint64_t* a, std::size_t n);
bool bits_subset(const uint64_t* a, const uint64_t* b, std::size_t n);
}  // namespace avx2
#endif

}  // namespace automizer::kernels
