#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stripbound/orlicz.hpp"

namespace stripbound {

/// Feasible lower bound for sup { sum f_i g_i w_i : sum Phi(g_i) w_i <= level, g >= 0 }
/// with Phi the complement of psi, found by searching g over a uniform grid
/// of `grid_points` values per atom. The constraint is handled by a
/// Lagrange multiplier found by bisection; each atom's grid maximisation is
/// independent given the multiplier. Independent of the Amemiya formula.
double brute_force_dual_norm(const MeasuredFunction& f, NFunction psi, double level,
                             int grid_points = 1 << 20);

/// Random measured function with 1..max_atoms atoms, values in [0, value_max)
/// and weights in (0, 1], rescaled to total measure `total` when total > 0.
MeasuredFunction random_measured_function(std::mt19937& rng, int max_atoms, double value_max,
                                          double total = 0.0);

struct OracleLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Amemiya versus brute-force dual ball on random functions, levels 1 and
/// mu in {0.5, 1, 2}.
std::vector<OracleLine> run_orlicz_oracle(std::uint32_t seed = 20240601, int cases = 100);

/// Sparse LDL^T and Bunch-Kaufman counts versus the dense eigensolver on
/// random symmetric matrices.
std::vector<OracleLine> run_inertia_oracle(std::uint32_t seed = 20240602, int cases = 50);

}  // namespace stripbound
