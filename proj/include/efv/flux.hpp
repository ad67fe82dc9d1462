// Numerical flux functions. Roe exposes its average/dissipation split, which
// the flux-extrapolation scheme variant needs; HLLC and LDFSS are used as
// black-box fluxes by the flux-correction variant.
#ifndef EFV_FLUX_HPP
#define EFV_FLUX_HPP

#include <string>

#include "efv/gas.hpp"
#include "efv/types.hpp"

namespace efv {

enum class FluxFunction { roe, hllc, ldfss };

const char* flux_name(FluxFunction f);
FluxFunction parse_flux(const std::string& name);  // throws std::invalid_argument

/// Roe flux in the form average - dissipation. flux_roe() returns exactly
/// average - dissipation of roe_split().
struct RoeSplit {
  Vec5 average;      // (f(wL) + f(wR)) / 2
  Vec5 dissipation;  // |A_roe| (uR - uL) / 2, with Harten entropy fix
};

/// entropy_fix scales the Harten threshold by the Roe-averaged sound speed
/// and applies to the acoustic waves only.
RoeSplit roe_split(const Vec5& wl, const Vec5& wr, const Vec3& n_hat, const GasModel& gas,
                   double entropy_fix = 0.05);
Vec5 flux_roe(const Vec5& wl, const Vec5& wr, const Vec3& n_hat, const GasModel& gas,
              double entropy_fix = 0.05);

/// HLLC with Roe-average based wave-speed estimates and a contact-restoring
/// middle state; reduces to the one-sided flux for supersonic states.
Vec5 flux_hllc(const Vec5& wl, const Vec5& wr, const Vec3& n_hat, const GasModel& gas);

/// Low-diffusion flux-vector splitting (baseline variant): van Leer Mach and
/// pressure splittings with a shared interface sound speed and a subsonic
/// interface-Mach correction that removes the contact diffusion.
Vec5 flux_ldfss(const Vec5& wl, const Vec5& wr, const Vec3& n_hat, const GasModel& gas);

/// Dispatch by id; entropy_fix only affects Roe.
Vec5 numerical_flux(FluxFunction id, const Vec5& wl, const Vec5& wr, const Vec3& n_hat,
                    const GasModel& gas, double entropy_fix = 0.05);

}  // namespace efv

#endif  // EFV_FLUX_HPP
