#pragma once

namespace upb {

// Shared run configuration. All tolerances are strictly positive; angles are
// radians everywhere in this library.
struct RunConfig {
    double tol_zero = 1e-9;    // |inner| <= tol_zero classifies as a zero scalar product
    double tol_rank = 1e-8;    // relative eigenvalue cutoff for numerical rank
    double tol_ppt = 1e-10;    // eigenvalue floor for the PPT verdict
    int max_members = 20;      // cap on the k^n unextendibility enumeration
    int threads = 1;           // worker threads for grid scans (1 = sequential)
    unsigned long seed = 0;    // seed for any randomized batch helpers
};

}  // namespace upb
