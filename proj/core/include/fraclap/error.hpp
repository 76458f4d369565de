#ifndef FRACLAP_ERROR_HPP
#define FRACLAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fraclap {

// Exit codes used by the CLI driver.
enum class ExitCode : int {
    ok = 0,
    config_error = 1,
    contract_violation = 2,
    io_error = 3,
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid user input: bad parameter ranges, malformed config, unknown keys.
struct ConfigError : Error {
    using Error::Error;
};

// A numerical contract was breached (Gram not SPD, tolerance exceeded, ...).
// `name` identifies the violated contract in run reports.
struct ContractError : Error {
    std::string name;
    ContractError(std::string contract, const std::string& what)
        : Error(what), name(std::move(contract)) {}
};

struct IoError : Error {
    using Error::Error;
};

} // namespace fraclap

#endif
