#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "olk/core.hpp"
#include "olk/orlicz.hpp"
#include "olk/rearrange.hpp"
#include "olk/weights.hpp"

namespace olk {

struct PermutationMin {
    ExtReal value;
    Permutation argmin = Permutation::identity(0);
    std::size_t evaluated = 0;
};

/// min over sigma of sum_i phi(x*(i) / w(sigma(i))) w(sigma(i)) by enumeration, n <= 8.
/// Shorter inputs are padded with zeros to a common length.
PermutationMin min_over_permutations(const Seq& x, const Seq& w, const OrliczFn& phi);

using Matrix = std::vector<std::vector<double>>;

struct MatrixSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = sum_ij phi(x*(i)/w(i)) w(i) A_ij, rhs = sum_ij phi(x*(i)/w(j)) w(j) A_ij.
/// A must be square, nonnegative, with row i and column i summing alike.
MatrixSides balanced_matrix_check(const Seq& x, const Seq& w, const Matrix& a, const OrliczFn& phi);

/// Nonnegative integer combination of at most n random permutation matrices.
Matrix random_balanced_matrix(std::size_t n, std::mt19937_64& rng);

/// Best objective over a lattice of feasible nonincreasing v on the cells of
/// f* (at most 3 positive cells). The last level is set to its largest feasible
/// value, which can only lower the objective.
double grid_search_P(const StepFn& f, const Weight& w, const OrliczFn& phi, int resolution);

/// grid_search_P followed by `levels` zoomed lattices around the incumbent.
/// The returned values are nonincreasing in `levels`.
double grid_search_P_refined(const StepFn& f, const Weight& w, const OrliczFn& phi, int resolution, int levels);

/// x padded with `zero_padding` zeros and shuffled with a seeded Fisher-Yates pass.
Seq random_equimeasurable(const Seq& x, std::size_t zero_padding, std::uint64_t seed);

/// Uniform integer in [0, n) from the raw engine output, identical on every platform.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);
/// Uniform real in [lo, hi) built from 53 random bits.
double uniform_real(std::mt19937_64& rng, double lo, double hi);

}  // namespace olk
