#include "dppln/errors.hpp"

#include <sstream>
#include <utility>

namespace dppln {

namespace {
std::string no_guided_mode_message(double wavelength_nm, const std::string& pol, const std::string& detail) {
    std::ostringstream msg;
    msg << "NoGuidedMode at " << wavelength_nm << " nm (" << pol << "): " << detail;
    return msg.str();
}
}  // namespace

NoGuidedMode::NoGuidedMode(double wavelength_nm, std::string polarization, const std::string& detail)
    : Infeasible(no_guided_mode_message(wavelength_nm, polarization, detail)),
      wavelength_nm_(wavelength_nm),
      polarization_(std::move(polarization)) {}

}  // namespace dppln
