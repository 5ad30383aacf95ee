#include "automizer/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <string>

namespace automizer::kernels {

namespace scalar {

void gather(const uint32_t* table, const uint32_t* index, uint32_t* out,
            std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = table[index[i]];
}

void table_multiply(const uint32_t* mul, std::size_t order, const uint32_t* a,
                    const uint32_t* b, uint32_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mul[a[i] * order + b[i]];
}

void bits_and(const uint64_t* a, const uint64_t* b, uint64_t* out,
              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void bits_or(const uint64_t* a, const uint64_t* b, uint64_t* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

std::size_t popcount(const uint64_t* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += std::popcount(a[i]);
  return c;
}

bool bits_subset(const uint64_t* a, const uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace scalar

namespace {

Backend detect() noexcept {
  if (const char* env = std::getenv("AUTOMIZER_SIMD")) {
    if (std::string(env) == "scalar") return Backend::Scalar;
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

bool use_avx2() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  return current().load(std::memory_order_relaxed) == Backend::Avx2;
#else
  return false;
#endif
}

}  // namespace

bool avx2_available() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

Backend active_backend() noexcept { return current().load(); }

bool set_backend(Backend b) noexcept {
  if (b == Backend::Avx2 && !avx2_available()) {
    current().store(Backend::Scalar);
    return false;
  }
  current().store(b);
  return true;
}

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

void gather(std::span<const uint32_t> table, std::span<const uint32_t> index,
            std::span<uint32_t> out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2::gather(table.data(), index.data(), out.data(), index.size());
#endif
  scalar::gather(table.data(), index.data(), out.data(), index.size());
}

void table_multiply(std::span<const uint32_t> mul, std::size_t order,
                    std::span<const uint32_t> a, std::span<const uint32_t> b,
                    std::span<uint32_t> out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2())
    return avx2::table_multiply(mul.data(), order, a.data(), b.data(), out.data(), a.size());
#endif
  scalar::table_multiply(mul.data(), order, a.data(), b.data(), out.data(), a.size());
}

void invert_permutation(std::span<const uint32_t> p, std::span<uint32_t> out) {
  // Scatter; no profitable AVX2 form.
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<uint32_t>(i);
}

void bits_and(std::span<const uint64_t> a, std::span<const uint64_t> b,
              std::span<uint64_t> out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2::bits_and(a.data(), b.data(), out.data(), a.size());
#endif
  scalar::bits_and(a.data(), b.data(), out.data(), a.size());
}

void bits_or(std::span<const uint64_t> a, std::span<const uint64_t> b,
             std::span<uint64_t> out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2::bits_or(a.data(), b.data(), out.data(), a.size());
#endif
  scalar::bits_or(a.data(), b.data(), out.data(), a.size());
}

std::size_t popcount(std::span<const uint64_t> a) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2::popcount(a.data(), a.size());
#endif
  return scalar::popcount(a.data(), a.size());
}

bool bits_subset(std::span<const uint64_t> a, std::span<const uint64_t> b) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2::bits_subset(a.data(), b.data(), a.size());
#endif
  return scalar::bits_subset(a.data(), b.data(), a.size());
}

}  // namespace automizer::kernels
