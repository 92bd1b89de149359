#pragma once

#include <string>
#include <vector>

#include "core/basis.hpp"
#include "core/config.hpp"

namespace upb {

struct DensityMatrix {
    CMat rho;
    std::vector<int> dims;
    double trace = 0.0;
};

// Normalized projector onto the orthogonal complement of the set's span:
// rho = (I - sum_i |psi_i><psi_i|) / (D - n). Requires mutual orthogonality
// and n < D.
DensityMatrix upb_complement_state(const ProductBasisSet& set, const RunConfig& cfg);

struct PptCut {
    std::vector<int> parties;     // parties transposed for this cut
    double min_eigenvalue = 0.0;
};

struct PptReport {
    std::vector<PptCut> cuts;
    bool ppt = false;             // all cut minima >= -tol
    double tol = 0.0;
};

// Partial-transpose spectrum minima. Default cuts transpose one party each;
// with include_pair_cuts, every two-party grouping is transposed as well
// (relevant for k >= 3 only; spectra of complementary cuts coincide).
PptReport ppt_check(const DensityMatrix& rho, double tol, bool include_pair_cuts = false);

// Assembled facts about a complement state, used by reporting surfaces.
struct StateFacts {
    std::vector<int> dims;
    int total_dim = 0;
    int n_members = 0;
    int rank = 0;
    double trace = 0.0;
    double eig_min = 0.0;
    double eig_max = 0.0;
    double max_member_overlap = 0.0;  // max_i <psi_i| rho |psi_i>
    PptReport ppt;
};

StateFacts complement_state_facts(const ProductBasisSet& set, const RunConfig& cfg,
                                  bool include_pair_cuts = false);

}  // namespace upb
