#ifndef LOCRES_ERRORS_HPP
#define LOCRES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace locres {

// Error taxonomy mirrored by the CLI exit codes:
//   model_error  -> 2  (model construction / regularity hypothesis violated)
//   parse_error  -> 3  (text input malformed)
//   choice_error -> 4  (non-admissible cone or non-generic ray)
// algebra_error covers arithmetic contract violations (pi-ledger mixing,
// truncation overruns); it indicates a caller bug, not bad user data.

struct algebra_error : std::runtime_error {
    explicit algebra_error(const std::string& what) : std::runtime_error(what) {}
};

struct model_error : std::runtime_error {
    explicit model_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct choice_error : std::runtime_error {
    explicit choice_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace locres

#endif
