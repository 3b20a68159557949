// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#ifndef PONSHARE_TOOLS_CLI_SURFACE_IO_HPP_
#define PONSHARE_TOOLS_CLI_SURFACE_IO_HPP_

#include <string>

#include "ponshare/experiment.hpp"

namespace ponshare::cli {

// Mesh table: one "r y p" row per point, %.6g, a blank line between blocks of
// constant r. With include_baseline the no-sharing surface follows in the
// same layout after a "# no-sharing baseline" comment line.
std::string format_surface_table(const ScenarioResult& result, bool include_baseline);

// Header "r,l,p,stderr,rse,n" (or "r,q,..."), one row per point.
std::string format_surface_csv(const ScenarioResult& result, bool baseline = false);

// JSON sidecar: configuration, seed, version, max RSE and flagged points.
// Contains nothing time-dependent, so identical runs give identical files.
std::string format_run_report(const ScenarioConfig& config, const RunReport& report,
                              const ScenarioResult& result);

}  // namespace ponshare::cli

#endif  // PONSHARE_TOOLS_CLI_SURFACE_IO_HPP_
