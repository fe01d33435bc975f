#pragma once

#include <cstddef>
#include <vector>

namespace curenet {

/// Edge of the contracted max-cut instance, endpoints in 0..N-1.
struct SdpEdge {
  std::size_t i;
  std::size_t j;
  double w;
};

struct SdpOptions {
  double gap_tolerance = 1e-6;
  std::size_t newton_limit = 500;
  double initial_sigma = 1.0;
  double sigma_growth = 10.0;
};

struct SdpResult {
  std::vector<double> delta;  ///< per-edge reduction, 0 <= delta_e <= w_e, sum <= budget
  std::vector<double> u;      ///< diagonal shift, sums to zero
  double upper_bound = 0;     ///< (N/4) * lambda_max(L_{w - delta} + diag u)
  double lower_bound = 0;     ///< value of the scaled dual matrix against the best reply
  std::size_t newton_steps = 0;
};

/// min over reductions delta (box and budget) of the Goemans-Williamson bound
/// max { tr(L_{w-delta} X) / 4 : diag X = 1, X psd }, written as
/// min (N/4) t  s.t.  t I - L_{w-delta} - diag u psd, 1^T u = 0.
/// Log-det barrier with feasible-start Newton steps; stops when the
/// primal/dual gap drops under `gap_tolerance`. Throws NumericError otherwise.
SdpResult solve_minimax_sdp(std::size_t node_count, const std::vector<SdpEdge>& edges,
                            double budget, const SdpOptions& options = {});

/// (N/4) * lambda_max(L_w + diag u) for the given weights, exact up to the
/// eigensolver.
double gw_upper_bound(std::size_t node_count, const std::vector<SdpEdge>& edges,
                      const std::vector<double>& u);

}  // namespace curenet
