#pragma once

#include <string>

#include "core/basis.hpp"
#include "core/config.hpp"
#include "core/optimize.hpp"
#include "core/states.hpp"
#include "core/strength.hpp"
#include "core/verify.hpp"

namespace upb {

inline constexpr int kSchemaVersion = 1;

// Document format: {schema_version, label, dims, members}, each vector a list
// of [re, im] pairs. Tensor products additionally embed their factor documents
// under "tensor_factors". Serialization round-trips every amplitude exactly.
std::string basis_to_json(const ProductBasisSet& set, bool pretty = true);
ProductBasisSet basis_from_json(const std::string& text);

std::string config_to_json(const RunConfig& cfg);

std::string upb_report_to_json(const UpbReport& rep, const ProductBasisSet& set,
                               const RunConfig& cfg);
std::string strength_report_to_json(const StrengthReport& rep, const ProductBasisSet& set,
                                    const RunConfig& cfg);
std::string state_facts_to_json(const StateFacts& facts, const ProductBasisSet& set,
                                const RunConfig& cfg);
std::string optimization_result_to_json(const OptimizationResult& res, const std::string& objective,
                                        const RunConfig& cfg);
std::string scan_summary_to_json(const ScanGrid& grid, const std::string& csv_path,
                                 const RunConfig& cfg);
std::string catalog_to_json();

}  // namespace upb
