#include "fiveprime/numeric.hpp"

#include <quadmath.h>

#include <mutex>
#include <string_view>

#include "fiveprime/error.hpp"

namespace fiveprime {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::RatioOutOfBand: return "ratio-out-of-band";
    case ErrorKind::RangeTooLarge: return "range-too-large";
    case ErrorKind::LimitExceeded: return "limit-exceeded";
    case ErrorKind::NonPositiveDelta: return "non-positive-delta";
    case ErrorKind::StepTooCoarse: return "step-too-coarse";
    case ErrorKind::GridTooLarge: return "grid-too-large";
    case ErrorKind::DomainViolation: return "domain-violation";
    case ErrorKind::MalformedWord: return "malformed-word";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::InfeasibleProfile: return "infeasible-profile";
    case ErrorKind::InstanceTooLarge: return "instance-too-large";
    case ErrorKind::MemoryLimit: return "memory-limit";
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::Io: return "io";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

DoubleDouble pow_split(double base, double expo) {
  __float128 q = powq(static_cast<__float128>(base), static_cast<__float128>(expo));
  double hi = static_cast<double>(q);
  double lo = static_cast<double>(q - static_cast<__float128>(hi));
  return {hi, lo};
}

void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  std::size_t chunks = chunk_count(n, threads);
  if (chunks == 0) return;
  auto bounds = [&](std::size_t c) { return n * c / chunks; };
  if (chunks == 1) {
    fn(0, n, 0);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    pool.emplace_back([&, c] {
      try {
        fn(bounds(c), bounds(c + 1), c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a(std::string_view text, std::uint64_t seed) {
  return fnv1a(std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(text.data()),
                                              text.size()),
               seed);
}

}  // namespace fiveprime
