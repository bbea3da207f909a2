#pragma once

// Driven qubit battery H(t) = eps |1><1| + eta(t) V(t), V(t) = n(t) . sigma.
//
// The average extracted work over a window dt averages the energy drop
// Tr[eps|1><1| (rho - rho')] over the two level permutations of the drive,
// +eta V and -eta V, and obeys
//     |W| <= 2 eps sin(eta dt) sqrt(C_V(rho)),
// with C_V the 1/2-affinity coherence in V's eigenbasis.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cohspeed/linalg.hpp"
#include "cohspeed/permutation_average.hpp"

namespace cohspeed {

using Axis = std::array<double, 3>;

struct BatteryConfig {
  double epsilon = 1.0;
  std::function<double(double)> pulse;      // eta(t) >= 0, eta(0) = eta(tau) = 0
  double tau = 1.0;
  std::function<Axis(double)> drive_axis;   // unit vector n(t)
  double dt = 1e-3;                         // integration step
  double work_window = 0.0;                 // <= 0 means "use dt"
  std::string pulse_name = "custom";
  std::string axis_name = "custom";

  double window() const { return work_window > 0.0 ? work_window : dt; }
  /// Throws BadConfig when the pulse endpoints or drive axis are invalid.
  void validate() const;
};

/// eta_max sin^2(pi t / tau).
std::function<double(double)> sine_squared_pulse(double eta_max, double tau);
/// eta_max sin(pi t / tau).
std::function<double(double)> sine_pulse(double eta_max, double tau);
/// 4 eta_max (t/tau)(1 - t/tau).
std::function<double(double)> parabolic_pulse(double eta_max, double tau);

std::function<Axis(double)> fixed_axis(Axis n);
/// (cos(omega t), sin(omega t), 0).
std::function<Axis(double)> rotating_axis(double omega);

/// n . sigma for a unit vector n.
Matrix spin_operator(const Axis& n);
/// eps |1><1|.
Matrix battery_bare_hamiltonian(double epsilon);

/// Propagation used over a work window. Full freezes H(t) = H0 + V_s;
/// Interaction drops H0 inside the window and evolves under V_s alone, which
/// is exact in the interaction picture up to the frozen-drive approximation.
enum class WorkPicture { Full, Interaction };

struct BranchWork {
  double plus = 0.0;   // branch H = eps|1><1| + eta V
  double minus = 0.0;  // branch H' = eps|1><1| - eta V
  double average() const { return 0.5 * (plus + minus); }
};

BranchWork branch_work(const DensityMatrix& rho, double epsilon, double eta, const Matrix& v, double window,
                       WorkPicture picture = WorkPicture::Full);

double avg_extracted_work(const DensityMatrix& rho, double epsilon, double eta, const Matrix& v, double window,
                          WorkPicture picture = WorkPicture::Full);

/// 2 eps sin(eta window) sqrt(C_V(rho)); throws WindowTooWide if eta window > pi/2.
double work_bound(const DensityMatrix& rho, double epsilon, double eta, const Matrix& v, double window);

struct WorkRecord {
  double t = 0.0;
  double eta = 0.0;
  double avg_work = 0.0;
  double bound = 0.0;
  double coherence = 0.0;  // C in V(t)'s eigenbasis
  double cumulative_work = 0.0;
};

struct BatteryRun {
  std::vector<WorkRecord> records;
  std::vector<std::string> warnings;
};

BatteryRun simulate_battery(const BatteryConfig& cfg, const PureState& psi0);

struct QuditWork {
  double avg_work = 0.0;
  double bound = 0.0;
};

/// Average of Tr[H0 (rho - U_s rho U_s^dag)] over every level permutation V_s
/// of the drive, with the bound k ||H0||_2 sqrt(2 (1 - B(dt)) C_V(rho)), B over
/// the drive's distinct levels. k = 1 for pure rho, where ||rho - sigma||_2^2
/// equals the Hellinger distance; k = 2 otherwise, from
/// rho - sigma = sqrt(rho) X + X sqrt(sigma) with X = sqrt(rho) - sqrt(sigma).
/// The bound is proved for the interaction picture. Under Full propagation it
/// can fail at second order in dt once H0 and V do not commute.
QuditWork qudit_battery_bound(const DensityMatrix& rho, const Matrix& h0, const Matrix& v, double window,
                              WorkPicture picture = WorkPicture::Interaction, std::size_t cap = kBruteForceCap);

}  // namespace cohspeed
