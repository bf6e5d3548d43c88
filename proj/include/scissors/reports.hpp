#pragma once

#include "scissors/io.hpp"

namespace scissors {

// JSON-in, JSON-out entry points shared by the command line and the Python module.
Json homology_report(const Json& input, Coeff coeff = Coeff::Z, int closure_rounds = 3);
Json dehn_complex_report(const Json& family, const Json& group, int truncate = -1, Coeff coeff = Coeff::Zhalf,
                         int closure_rounds = 3);
Json classical_report(const Json& polytope, int bits = 200);
Json ccs_report(const Json& tuple, int bits = 200);

}  // namespace scissors
