#include "pstneps/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "pstneps/errors.hpp"
#include "pstneps/spectral.hpp"

namespace pstneps {

std::vector<PstEvent> detect_pst(const ComplexMatrix& h, const NepsSpec& spec,
                                 const RationalAngle& time, double tol) {
  if (h.dim() != spec.vertex_count())
    throw std::invalid_argument("detect_pst: matrix does not match spec order");
  if (!is_unitary(h, std::max(tol, 1e-10)))
    throw std::invalid_argument("detect_pst: matrix is not unitary");
  std::vector<PstEvent> events;
  const std::size_t n = h.dim();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double modulus = std::abs(h(u, v));
      if (modulus >= 1.0 - tol) events.push_back({u, v, time, modulus, h(u, v)});
    }
  }
  return events;
}

std::optional<Periodicity> detect_periodic(const ComplexMatrix& h, double tol) {
  const std::size_t n = h.dim();
  Periodicity record{true, h(0, 0), {}};
  record.vertex_phases.reserve(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (std::abs(h(u, u)) < 1.0 - tol) return std::nullopt;
    record.vertex_phases.push_back(h(u, u));
  }
  for (std::size_t u = 0; u < n && record.scalar; ++u) {
    if (std::abs(h(u, u) - record.phase) > tol) record.scalar = false;
    for (std::size_t v = 0; v < n && record.scalar; ++v)
      if (u != v && std::abs(h(u, v)) > tol) record.scalar = false;
  }
  if (!record.scalar) record.phase = cplx{};
  return record;
}

namespace {

Prediction no_claim(std::string rule, std::string detail) {
  Prediction p;
  p.kind = PredictionKind::NoClaim;
  p.rule = std::move(rule);
  p.detail = std::move(detail);
  return p;
}

Prediction periodic_claim(std::string rule, RationalAngle period, cplx phase,
                          std::size_t m) {
  Prediction p;
  p.kind = PredictionKind::Periodic;
  p.rule = std::move(rule);
  p.time = period;
  p.shift = BasisVector::zeros(m);
  p.phase = phase;
  return p;
}

Prediction pst_claim(std::string rule, RationalAngle time, BasisVector shift, cplx phase) {
  Prediction p;
  p.kind = PredictionKind::Pst;
  p.rule = std::move(rule);
  p.time = time;
  p.shift = std::move(shift);
  p.phase = phase;
  return p;
}

// PST when the closed form's tail is nonzero, periodicity otherwise.
Prediction claim_from_form(const std::string& rule, const ClosedForm& form) {
  if (form.record.shift.is_zero())
    return periodic_claim(rule, form.record.time, form.record.phase,
                          form.record.shift.size());
  return pst_claim(rule, form.record.time, form.record.shift, form.record.phase);
}

}  // namespace

std::vector<Prediction> predict_large_support(const NepsSpec& spec) {
  if (spec.large_indices().empty())
    return {no_claim("large-support", "no large factors")};
  const auto form = closed_form(spec, SpecialForm::LargeSupportPeriod);
  if (!form)
    return {no_claim("large-support", "basis has binary-active patterns")};
  return {periodic_claim("large-support", form->record.time, form->record.phase,
                         spec.factor_count())};
}

std::vector<Prediction> predict_binary_support(const NepsSpec& spec) {
  const auto form = closed_form(spec, SpecialForm::BinarySupportHalfPi);
  if (!form)
    return {no_claim("binary-support", "basis has large-active patterns")};
  return {claim_from_form("binary-support", *form)};
}

std::vector<Prediction> predict_cubelike(const NepsSpec& spec) {
  if (!spec.large_indices().empty())
    return {no_claim("cubelike", "not all factors are binary")};
  const auto form = closed_form(spec, SpecialForm::BinarySupportHalfPi);
  return {claim_from_form("cubelike", *form)};
}

std::vector<Prediction> predict_mixed(const NepsSpec& spec) {
  const BasisSplit split = split_support(spec);
  const bool binary_active = !split.a2.empty() || !split.a3.empty();
  const bool large_active = !split.a1.empty() || !split.a3.empty();
  if (!binary_active || !large_active)
    return {no_claim("mixed-base", "basis does not activate both factor kinds")};

  std::vector<Prediction> out;
  const long long h = *spec.h();
  if (h % 2 == 1) {
    out.push_back(periodic_claim("mixed-base", RationalAngle(2, 1), {1.0, 0.0},
                                 spec.factor_count()));
  } else {
    const auto form = closed_form(spec, SpecialForm::PiScalar);
    out.push_back(periodic_claim("mixed-base", RationalAngle(1, 1), form->record.phase,
                                 spec.factor_count()));
  }

  if (h % 4 == 0) {
    const auto form = closed_form(spec, SpecialForm::MixedHalfPi);
    out.push_back(claim_from_form("mixed-ctail", *form));
  } else {
    const auto form = closed_form(spec, SpecialForm::FiberRefinedHalfPi);
    if (form)
      out.push_back(claim_from_form("mixed-fiber", *form));
    else
      out.push_back(no_claim("mixed-fiber", "fiber size/sum conditions not satisfied"));
  }
  return out;
}

std::vector<Prediction> predict_hamming(const NepsSpec& spec) {
  const std::size_t m = spec.factor_count();
  if (spec.basis().size() != m) return {};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::uint8_t> bits(m, 0);
    bits[i] = 1;
    if (!spec.basis().contains(BasisVector(std::move(bits)))) return {};
  }
  if (spec.large_indices().empty() || spec.binary_indices().empty()) return {};

  std::vector<Prediction> out;
  const long long h = *spec.h();
  if (h % 2 == 1) {
    out.push_back(periodic_claim("hamming", RationalAngle(2, 1), {1.0, 0.0}, m));
  } else {
    out.push_back(periodic_claim("hamming", RationalAngle(1, 1),
                                 {(m % 2 == 0) ? 1.0 : -1.0, 0.0}, m));
  }
  if (h % 4 == 0) {
    const BasisVector ones =
        embed_at(c_of(fiber(spec, BasisVector::zeros(spec.large_indices().size())),
                      spec.binary_indices().size()),
                 spec.binary_indices(), m);
    out.push_back(pst_claim("hamming", RationalAngle(1, 2), ones,
                            mixed_half_pi_scalar(spec)));
  }
  return out;
}

std::vector<Prediction> run_all_predictors(const NepsSpec& spec) {
  std::vector<Prediction> out;
  for (auto* fn : {predict_large_support, predict_binary_support, predict_mixed,
                   predict_hamming, predict_cubelike}) {
    auto part = fn(spec);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<RationalAngle> default_scan_grid() {
  std::vector<RationalAngle> grid;
  for (long long q = 1; q <= 8; ++q)
    for (long long p = 1; p <= 2 * q; ++p)
      if (std::gcd(p, q) == 1) grid.emplace_back(p, q);
  std::sort(grid.begin(), grid.end(),
            [](const RationalAngle& a, const RationalAngle& b) {
              return a.num() * b.den() < b.num() * a.den();
            });
  return grid;
}

AnalysisReport analyze(const NepsSpec& spec, const std::vector<RationalAngle>& scan_times,
                       double tol, bool verify_paths, std::size_t size_cap) {
  const TransitionEngine engine(spec, size_cap);
  AnalysisReport report{spec, tol, verify_paths, {}, {}, {}, false};

  auto predictions = run_all_predictors(spec);

  std::set<RationalAngle> times(scan_times.begin(), scan_times.end());
  for (const auto& p : predictions)
    if (p.kind != PredictionKind::NoClaim) times.insert(p.time);
  times.erase(RationalAngle());

  std::map<RationalAngle, ComplexMatrix> evaluated;
  for (const auto& t : times) {
    ComplexMatrix h = engine.transition(t);
    const double residual = unitarity_residual(h);
    if (residual > 1e-8)
      throw computation_error("transition at t=" + t.str() +
                              "π is not unitary (residual " + std::to_string(residual) +
                              ")");
    if (verify_paths) {
      const double gap = max_norm_diff(h, engine.transition_full_spectrum(t));
      if (gap > 1e-9)
        throw computation_error("evaluation paths disagree at t=" + t.str() +
                                "π (gap " + std::to_string(gap) + ")");
    }
    TimePointRecord record{t, residual, detect_pst(h, spec, t, tol),
                           detect_periodic(h, tol)};
    report.timeline.push_back(std::move(record));
    evaluated.emplace(t, std::move(h));
  }
  std::sort(report.timeline.begin(), report.timeline.end(),
            [](const TimePointRecord& a, const TimePointRecord& b) {
              return a.time.value() < b.time.value();
            });

  for (auto& p : predictions) {
    PredictionOutcome outcome{std::move(p), false, false, ""};
    const Prediction& pred = outcome.prediction;
    if (pred.kind != PredictionKind::NoClaim) {
      outcome.checked = true;
      const ComplexMatrix& h = evaluated.at(pred.time);
      if (pred.kind == PredictionKind::Pst) {
        if (pred.shift.is_zero()) {
          outcome.note = "claimed transfer with zero shift";
        } else if (pred.phase) {
          const double gap =
              max_norm_diff(h, scale(shift_pattern_matrix(spec, pred.shift), *pred.phase));
          outcome.confirmed = gap <= tol;
          if (!outcome.confirmed)
            outcome.note = "matrix differs from predicted form by " + std::to_string(gap);
        } else {
          outcome.confirmed = true;
          for (std::size_t u = 0; u < h.dim() && outcome.confirmed; ++u) {
            const std::size_t v =
                vertex_index(spec, vertex_add(spec, index_vertex(spec, u), pred.shift));
            if (std::abs(h(u, v)) < 1.0 - tol) {
              outcome.confirmed = false;
              outcome.note = "entry modulus below threshold at vertex " + std::to_string(u);
            }
          }
        }
      } else {
        const auto& periodic = report.timeline;
        const auto it =
            std::find_if(periodic.begin(), periodic.end(),
                         [&](const TimePointRecord& r) { return r.time == pred.time; });
        if (it == periodic.end() || !it->periodicity) {
          outcome.note = "no periodicity observed at claimed period";
        } else if (pred.phase) {
          const auto& record = *it->periodicity;
          outcome.confirmed =
              record.scalar && std::abs(record.phase - *pred.phase) <= tol;
          if (!outcome.confirmed)
            outcome.note = record.scalar ? "common phase differs from prediction"
                                         : "matrix is not a scalar multiple of identity";
        } else {
          outcome.confirmed = true;
        }
      }
      if (!outcome.confirmed) report.discrepancy = true;
    }
    report.predictions.push_back(std::move(outcome));
  }

  for (const auto& record : report.timeline) {
    if (record.events.empty()) continue;
    const bool claimed =
        std::any_of(report.predictions.begin(), report.predictions.end(),
                    [&](const PredictionOutcome& o) {
                      return o.prediction.kind == PredictionKind::Pst &&
                             o.prediction.time == record.time;
                    });
    if (!claimed) report.unexplained_pst_times.push_back(record.time);
  }
  return report;
}

}  // namespace pstneps
