#pragma once

#include <stdexcept>
#include <string>

namespace powsum {

enum class errc {
    bad_input,             // malformed files, unparsable literals
    degree_overflow,       // index degree exceeds the truncation 2N
    too_many_parts,        // subset enumeration past its hard cap
    tail_too_short,        // not enough data for a limit estimate
    non_monotone_ratios,   // ratio sequence decreases: inadmissible input
    nonpositive_residual,  // reduction drove an entry negative
    rank_ambiguous,        // numerical rank decision too close to call
    negative_root,         // recovered geometric ratio is not positive
    irrational_weight,     // exact mode cannot represent the weight
    inadmissible_input,    // validation gate failed
    monotonicity_violation,// extracted weights increased: extraction error
    non_symmetric          // matrix argument must be symmetric
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

}  // namespace powsum
