#pragma once

#include <stdexcept>
#include <string>

namespace peb {

// Failures that come from the numerics rather than from bad arguments.
// Argument problems throw std::invalid_argument.
class NumericError : public std::runtime_error {
public:
    enum class Kind {
        SingularNormal,
        TrajectoryStopped,
        Escape,
        Graze,
        LocalChart,
        Stencil,
        DegenerateMember,
        TropicReached,
        StepUnderflow,
        Chart,
        EnvelopeDegenerate,
        InfiniteCrossRatio,
        Convergence,
    };

    NumericError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

const char* kind_name(NumericError::Kind k);

}  // namespace peb
