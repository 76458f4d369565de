#ifndef FRACLAP_RUN_HPP
#define FRACLAP_RUN_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace fraclap {

struct RunOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
    int threads = 0;
};

// Executes one CLI command: reads and strictly validates the JSON config,
// writes CSV outputs and a run report into out_dir, and returns the exit
// code (0 ok, 1 config error, 2 numerical contract violation, 3 I/O error).
// Config errors leave no partial outputs behind.
int run_command(const std::string& command, const RunOptions& options);

const char* const* known_commands(std::size_t* count);

} // namespace fraclap

#endif
