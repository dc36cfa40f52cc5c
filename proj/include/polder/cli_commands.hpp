#pragma once

#include "polder/config.hpp"
#include "polder/output.hpp"
#include "polder/verify.hpp"

namespace polder {

//! Table builders behind the CLI subcommands. Sweep points are evaluated
//! concurrently when jobs > 1, with rows assembled in deterministic order.
Table build_medium_table(const RunConfig& cfg);
Table build_shift_table(const RunConfig& cfg, int jobs);
Table build_rates_table(const RunConfig& cfg, int jobs);
Table build_coefficients_table(const RunConfig& cfg);
Table build_dyson_table(const RunConfig& cfg);
Table build_verify_table(const RunConfig& cfg, bool corrupt_branch,
                         bool* all_passed);

} // namespace polder
