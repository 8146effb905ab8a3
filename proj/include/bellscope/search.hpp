#pragma once

#include "bellscope/measures.hpp"

#include <cstddef>
#include <cstdint>

namespace bellscope {

/// Separations of the two coplanar setting pairs.
struct CoplanarConfig {
    double phi_xy = 0.0;
    double phi_prime = 0.0;
};

/// Equatorial settings whose sign sectors share bisectors:
/// x at azimuth 0, y at phi_xy, x' and y' at pi/2 + phi_xy/2 -+ phi_prime/2.
/// Throws std::invalid_argument unless both angles lie in [0, pi].
DirectionQuad common_bisector_quad(const CoplanarConfig& config);

/// Distance between the XY and X'Y' densities of common_bisector_quad(config).
double coplanar_objective(const ContinuousModel& model, const CoplanarConfig& config);

struct CoplanarSearchResult {
    double M_star = 0.0;
    CoplanarConfig config;
    /// Best grid point before refinement.
    double grid_value = 0.0;
    CoplanarConfig grid_config;
    std::size_t evaluations = 0;
};

/// Grid of grid_n x grid_n configurations on [0, pi]^2, then a compass search
/// (coordinate and diagonal directions, step halving) from the best grid point
/// until the step falls below refine_tol. Ties keep the smaller phi_xy, then
/// the smaller phi_prime. Requires grid_n >= 32 and refine_tol > 0.
CoplanarSearchResult maximize_M_coplanar(const ContinuousModel& model, std::size_t grid_n, double refine_tol,
                                         Execution exec = Execution::parallel);

/// Serial reference for the grid stage: value of every grid point, row-major
/// over (phi_xy, phi_prime).
std::vector<double> coplanar_grid_serial(const ContinuousModel& model, std::size_t grid_n);
std::vector<double> coplanar_grid_parallel(const ContinuousModel& model, std::size_t grid_n);

struct GeneralSearchResult {
    /// Fresh tv_monte_carlo estimate (seed, n_mc) at the screened winner.
    MonteCarloEstimate M_star;
    /// Largest screening estimate; biased upward by selection over trials.
    double screen_value = 0.0;
    double screen_std_error = 0.0;
    DirectionQuad quad;
    PairWitness witness;
    std::size_t best_trial = 0;
    std::size_t trials = 0;
    std::size_t evaluations = 0;
};

/// Per-trial screening result: largest of the six distances of one quad.
struct TrialScreen {
    double value = 0.0;
    double std_error = 0.0;
    PairWitness witness;
};

/// Draws `trials` quads of directions uniformly on the sphere (no coplanarity)
/// and screens all six setting-pair distances of each with one shared set of
/// n_mc hidden-variable samples. The winner is re-estimated with
/// tv_monte_carlo(seed, n_mc), which uses samples independent of the screen.
GeneralSearchResult random_search_M_general(const ContinuousModel& model, std::size_t trials, std::size_t n_mc,
                                            std::uint64_t seed, Execution exec = Execution::parallel);

/// Quad drawn for one trial of random_search_M_general.
DirectionQuad random_search_quad(std::uint64_t seed, std::size_t trial);

/// Screening of one quad against precomputed samples.
TrialScreen screen_quad(const ContinuousModel& model, const DirectionQuad& quad, const SamplePoints& samples);

/// Equatorial (X, X', Y, Y') at azimuths (0, 3pi/2, 3pi/4, 5pi/4), where the
/// singlet correlations give E = 2 sqrt(2) with the minus sign on X'Y'.
DirectionQuad chsh_optimal_quad();

} // namespace bellscope
