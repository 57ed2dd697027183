// Copyright 2026 The opmean authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "opmean/matcore.hpp"
#include "opmean/matrix.hpp"

namespace opmean {

// Seeded pseudo-random stream for the randomized oracles. Every consumer
// takes an explicit Rng so verdicts are reproducible from the CLI seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double a = 0.0, double b = 1.0) {
        return std::uniform_real_distribution<double>(a, b)(gen_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    complexd cgauss() { return complexd(normal(), normal()); }
    std::uint64_t next_seed() { return gen_(); }

    std::vector<complexd> gaussian_vector(std::size_t n);
    Mat gaussian_matrix(std::size_t rows, std::size_t cols);
    Mat hermitian(std::size_t n, double scale = 1.0);
    // G G^* with G complex Gaussian n x rank (Wishart-style PSD).
    PsdMatrix psd(std::size_t n, std::size_t rank = 0);
    PsdMatrix positive_definite(std::size_t n, double floor = 0.1);
    PsdMatrix density(std::size_t n, std::size_t rank = 0);
    Mat unitary(std::size_t n);
    // Rank-k orthogonal projection from the first k columns of a random unitary.
    Mat projection(std::size_t n, std::size_t k);
    std::vector<double> prob_vector(std::size_t m);

  private:
    std::mt19937_64 gen_;
};

}  // namespace opmean
