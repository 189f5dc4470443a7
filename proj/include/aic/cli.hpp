#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aic::cli {

// The batch front end behind the `aic` binary, callable in-process.
//
// Subcommands: check, eval, refute, fuzz, corpus, discrete, rules, gen-kind.
// Exit codes: 0 when the requested verification fully succeeds, 1 when it
// ran but failed (a proof rejected, a counterexample found, a goal left
// unknown), 2 for usage and input errors.  `--json` switches the report to a
// machine-readable object with a versioned "schema" field; the environment
// variable AIC_SEED overrides the default seed of the randomized commands,
// and every randomized command echoes the seed it used.
//
// `args` excludes the program name.  Reports go to `out`, diagnostics and
// usage errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace aic::cli
