#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "rgl/error.hpp"

namespace rgl {

// Counter-based PRNG (Philox4x32-10). Output is a pure function of
// (seed, stream_id, block counter), so streams are values: copying one forks
// the sequence, and distinct stream ids give statistically independent
// sequences from the same seed. The raw 32/64-bit word stream is bit-exact
// across platforms; float variates additionally depend on libm rounding.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  double uniform01();                       // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);     // [lo, hi)
  std::size_t uniform_index(std::size_t n); // {0, .., n-1}, n >= 1
  double gaussian();                        // N(0,1); Box-Muller, pair cached
  double gamma(double alpha);               // shape alpha > 0, unit scale
  double beta(double a, double b);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;  // next unread word in buf_; 4 == empty
  double gauss_spare_ = 0.0;
  bool have_spare_ = false;
};

RngStream rng_stream(std::uint64_t seed, std::uint64_t stream_id);

// Deterministic child stream; split(p, i) != split(p, j) for i != j.
RngStream split(const RngStream& parent, std::uint64_t i);

// i.i.d. N(0, sigma^2); sigma = 0 yields exact zeros. sigma < 0 is an error.
std::vector<double> sample_gaussian(RngStream& rng, std::size_t count, double sigma);

// Symmetric Dirichlet over n weights; nonnegative, sums to 1 within 1e-12.
std::vector<double> sample_dirichlet(RngStream& rng, std::size_t n, double concentration);

double sample_beta(RngStream& rng, double alpha, double beta);

}  // namespace rgl
