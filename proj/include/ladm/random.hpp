#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ladm {

using Rng = std::mt19937_64;

// Standard normal n x m matrix, filled column by column.
inline Eigen::MatrixXd gaussian_matrix(Eigen::Index n, Eigen::Index m, Rng& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd out(n, m);
    for (Eigen::Index c = 0; c < m; ++c)
        for (Eigen::Index r = 0; r < n; ++r)
            out(r, c) = g(rng);
    return out;
}

inline Eigen::MatrixXd gaussian_matrix(Eigen::Index n, Eigen::Index m, std::uint64_t seed)
{
    Rng rng(seed);
    return gaussian_matrix(n, m, rng);
}

// Decorrelates derived seeds (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace ladm
