#pragma once

// Mannheim offsets: rotating the ruling by a dual angle θ̄ about the central
// tangent ã, the offset-angle ODE θ̄' = −k̄1, and the relations between the
// invariants of a surface and its offset.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ruled/ruled_surface.hpp"

namespace ruled {

class OffsetAngle {
 public:
  enum class Kind { constant, varying, mannheim };

  static OffsetAngle constant(DualAngle value, double period = 2.0 * M_PI);
  /// θ and θ* as functions of the surface parameter (jets optional).
  static OffsetAngle varying(const CurveSampler<double>& theta,
                             const CurveSampler<double>& theta_star);
  static OffsetAngle from_sampler(const CurveSampler<DualNumber>& value, Kind kind);

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::constant; }
  DualNumber operator()(double t) const { return value_(t); }
  Jet<DualNumber> jet(double t) const { return sampler_jet(value_, t); }
  const CurveSampler<DualNumber>& sampler() const { return value_; }

  /// Value at t = 0; the single θ̄ of a constant angle.
  DualAngle initial() const;

 private:
  Kind kind_ = Kind::constant;
  CurveSampler<DualNumber> value_;
};

/// θ̄(t) = θ̄0 − ∫_0^t k̄1.
OffsetAngle mannheim_angle(const RuledSurfaceDef& s, DualAngle initial,
                           const QuadratureSpec& spec = {});

struct OffsetResult {
  RuledSurfaceDef source;
  OffsetAngle angle;
  CurveSampler<DualVector3> q1, h1, a1;  // q̃1 = cos θ̄ q̃ + sin θ̄ h̃, h̃1 = ã, ã1 = sin θ̄ q̃ − cos θ̄ h̃
  RuledSurfaceDef surface;               // rebuilt from q̃1, base at the foot points
};

OffsetResult rotate_offset(const RuledSurfaceDef& s, const OffsetAngle& angle,
                           Closure closure = Closure::automatic);

/// How far dq̃1 is from being parallel to ã.
struct MannheimResidual {
  double max_sine_real = 0.0;   // ‖real(dq̃1 × ã)‖ / ‖real dq̃1‖
  double max_sine_dual = 0.0;   // ‖dual(dq̃1 × ã)‖ / ‖real dq̃1‖
  double max_coefficient = 0.0; // |θ̄' + k̄1|, the ã1 coefficient of dq̃1
  int skipped = 0;              // samples with dq̃1 ≈ 0
  double max_sine() const { return std::max(max_sine_real, max_sine_dual); }
};

MannheimResidual mannheim_residual(const OffsetResult& offset,
                                   int sample_count = kDefaultSampleCount);

struct PairCheck {
  bool is_pair = false;
  double max_deviation_real = 0.0;  // ‖ã − (±h̃1)‖, orientation of h̃1 free
  double max_deviation_dual = 0.0;
  bool heuristic_alignment = false;
};

/// Uses the shared source parameter of an offset.
PairCheck is_mannheim_pair(const OffsetResult& offset, double tol,
                           int sample_count = kDefaultSampleCount);

/// Two unrelated surfaces: each ruling of s2 is matched to the ruling of s1
/// at the smallest dual angle. Throws alignment when the matches do not run
/// monotonically.
PairCheck is_mannheim_pair(const RuledSurfaceDef& s1, const RuledSurfaceDef& s2, double tol,
                           int sample_count = kDefaultSampleCount);

struct RelationCheck {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool asserted = true;
  bool pass = false;
  std::string note;
};

RelationCheck make_check(std::string id, double lhs, double rhs, double tolerance,
                         bool asserted = true, std::string note = {});

/// λ̄ = λ − εℓ with λ from the surface's own frame and ℓ its pitch.
DualNumber intrinsic_dual_angle_of_pitch(const RuledSurfaceDef& s,
                                         const QuadratureSpec& spec = {});

/// λ̄_q1 = λ̄_q cos θ̄ + λ̄_h sin θ̄ and its special cases. Asserted only for a
/// constant θ̄; for a varying angle the entries are reported.
std::vector<RelationCheck> dual_pitch_relation(const OffsetResult& offset, double tol,
                                               const QuadratureSpec& spec = {});

struct DevelopabilitySample {
  double t = 0.0;
  double torsion = 0.0;        // τ_α
  double residual = 0.0;       // sin θ + θ* τ_α cos θ
  double drall_formula = 0.0;  // (sin θ + θ* τ cos θ)/(τ sin θ), NaN when τ sin θ = 0
  double drall_direct = 0.0;   // distribution parameter of the offset
  bool singular = false;       // sin θ = 0
};

struct DevelopabilityReport {
  std::vector<DevelopabilitySample> samples;
  double max_residual = 0.0;
  double max_drall_direct = 0.0;
  bool equivalence_holds = true;  // |δ1| < tol ⇔ |residual| < tol |τ sin θ|
  bool singular_branch = false;
};

/// Needs a developable source with a regular striction line. Throws
/// degenerate_striction for a point striction and precondition otherwise.
DevelopabilityReport developability_condition(const OffsetResult& offset, double tol,
                                              int sample_count = kDefaultSampleCount);

struct PartnerCheck {
  bool applicable = false;  // both surfaces developable
  bool coincident = false;  // θ* ≡ 0, striction lines coincide
  bool pass = false;
  double max_sine = 0.0;    // ‖B_α × N_β‖
  std::string note;
};

/// Compares the binormal of the striction line α with the principal normal of
/// β = α + θ* a. Throws frenet_degenerate when either curvature vanishes.
PartnerCheck mannheim_partner_check(const OffsetResult& offset, double tol,
                                    int sample_count = kDefaultSampleCount);

struct OffsetPitchReport {
  double derived = 0.0;  // ∮ (cos θ − θ* τ sin θ) ds
  double printed = 0.0;  // ∮ (cos θ − θ* τ cos θ) ds
  double direct = 0.0;   // pitch of the offset surface
};

OffsetPitchReport developable_offset_pitch(const OffsetResult& offset,
                                           const QuadratureSpec& spec = {});

std::vector<RelationCheck> projected_area_relations(const OffsetResult& offset, double tol,
                                                    const QuadratureSpec& spec = {});

}  // namespace ruled
