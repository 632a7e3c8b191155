#pragma once

#include "obstrukt/json_io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace obstrukt::cli {

enum class Command { Cohomology, Cup, Massey, Solve, Dwyer, VerifyCor65, Icosahedral, EmitCorpus };

/// Exit codes: success or agreement, input or budget error, mathematical disagreement.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDisagreement = 2;

/// Node cap used when neither --budget nor OBSTRUKT_BUDGET is given.
inline constexpr std::size_t kDefaultBudget = 10'000'000;

struct Manifest {
    Command command = Command::Cohomology;
    /// Named inputs: group, coeff, module, degree, p, q, characters, n, mod,
    /// problem, corpus, kind, size. Values are names, inline JSON or file paths.
    std::map<std::string, std::string> inputs;
    std::size_t budget = kDefaultBudget; ///< node cap for searches
    std::size_t max_coordinates = 2'000'000;
    std::optional<std::string> output; ///< file path; standard output when absent
    uint64_t seed = 0;
};

struct RunResult {
    int exit_code = kExitOk;
    io::Json report;
};

std::string command_name(Command c);

/// Executes a manifest. Input and budget errors become exit code 1 with an
/// "error" object in the report; they do not throw.
RunResult run(const Manifest& m);

/// Parses command-line arguments into a manifest, runs it, and writes the
/// report (to the manifest's output or `out`) and diagnostics to `err`.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace obstrukt::cli
