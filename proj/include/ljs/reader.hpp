#pragma once

#include <stdexcept>
#include <string>

#include "ljs/syntax.hpp"

namespace ljs {

struct CoreReadError : std::runtime_error {
    size_t offset;
    CoreReadError(std::string msg, size_t off)
        : std::runtime_error(std::move(msg)), offset(off) {}
};

// Parses the canonical core text emitted by print_expr. Accepts the runtime
// forms (#N locations, err v) too, so traces can be read back; source
// programs are screened separately with source_well_formed.
ExprPtr read_core(const std::string& text);

}  // namespace ljs
