#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sftlab/markov.hpp"

namespace sftlab {

// All sampling goes through mt19937_64 with an explicit uniform construction,
// so a seed pins the sampled path for a given build.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  int categorical(const std::vector<double>& probs) {
    double u = uniform01();
    double acc = 0;
    for (size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

 private:
  std::mt19937_64 gen_;
};

// Length-`len` prefix of a point sampled from the Markov measure.
std::vector<int> sample_prefix(const MarkovSpec& spec, long len, SampleRng& rng);

}  // namespace sftlab
