#ifndef AZETA_ERRORS_HPP
#define AZETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace azeta
{

// Base for every error raised by the library. Pole proximity of meromorphic
// evaluations is reported through EvalResult::status instead.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define AZETA_DEFINE_ERROR(name)                                                                       \
    class name : public error                                                                          \
    {                                                                                                  \
    public:                                                                                            \
        explicit name(const std::string &what) : error(#name ": " + what) {}                           \
    }

AZETA_DEFINE_ERROR(invalid_period_ratio);
AZETA_DEFINE_ERROR(zero_period);
AZETA_DEFINE_ERROR(convergence_policy);
AZETA_DEFINE_ERROR(series_divergence);
AZETA_DEFINE_ERROR(near_zero_denominator);
AZETA_DEFINE_ERROR(identical_indices);
AZETA_DEFINE_ERROR(degenerate_lattice);
AZETA_DEFINE_ERROR(pole_proximity);
AZETA_DEFINE_ERROR(branch_ambiguity);
AZETA_DEFINE_ERROR(suite_config);
AZETA_DEFINE_ERROR(invalid_argument);

#undef AZETA_DEFINE_ERROR

} // namespace azeta

#endif
