#include "olk/olk.h"

#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "olk/config.hpp"
#include "olk/error.hpp"
#include "olk/report.hpp"

struct olk_space {
  olk::SpaceConfig cfg;
};

struct olk_function {
  olk::StepFunction fn;
};

struct olk_report {
  olk::Report report;
};

namespace {

thread_local std::string last_error;

olk_status status_of(olk::ErrorKind kind) {
  switch (kind) {
    case olk::ErrorKind::InvalidArgument: return OLK_INVALID_ARGUMENT;
    case olk::ErrorKind::Parse: return OLK_PARSE_ERROR;
    case olk::ErrorKind::OutsideSpace: return OLK_OUTSIDE_SPACE;
    case olk::ErrorKind::HorizonExceeded: return OLK_HORIZON_EXCEEDED;
    case olk::ErrorKind::Precondition: return OLK_PRECONDITION_VIOLATED;
    case olk::ErrorKind::DomainMismatch: return OLK_DOMAIN_MISMATCH;
    case olk::ErrorKind::Inconsistent: return OLK_INCONSISTENT;
    case olk::ErrorKind::Io: return OLK_IO_ERROR;
  }
  return OLK_INTERNAL_ERROR;
}

olk_status fail(olk_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
olk_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return OLK_OK;
  } catch (const olk::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OLK_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(OLK_INTERNAL_ERROR, e.what());
  }
}

template <class... Ptrs>
bool any_null(const Ptrs*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

olk_status null_argument() { return fail(OLK_INVALID_ARGUMENT, "null argument"); }

template <class Make>
olk_status make_report(olk_report** out, Make&& make) {
  if (out == nullptr) return null_argument();
  return guarded([&] { *out = new olk_report{make()}; });
}

}  // namespace

extern "C" {

const char* olk_version(void) { return "0.1.0"; }

const char* olk_status_token(olk_status status) {
  switch (status) {
    case OLK_OK: return "ok";
    case OLK_INVALID_ARGUMENT: return olk::error_token(olk::ErrorKind::InvalidArgument);
    case OLK_PARSE_ERROR: return olk::error_token(olk::ErrorKind::Parse);
    case OLK_OUTSIDE_SPACE: return olk::error_token(olk::ErrorKind::OutsideSpace);
    case OLK_HORIZON_EXCEEDED: return olk::error_token(olk::ErrorKind::HorizonExceeded);
    case OLK_PRECONDITION_VIOLATED: return olk::error_token(olk::ErrorKind::Precondition);
    case OLK_DOMAIN_MISMATCH: return olk::error_token(olk::ErrorKind::DomainMismatch);
    case OLK_INCONSISTENT: return olk::error_token(olk::ErrorKind::Inconsistent);
    case OLK_IO_ERROR: return olk::error_token(olk::ErrorKind::Io);
    case OLK_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

const char* olk_last_error(void) { return last_error.c_str(); }

olk_status olk_space_parse(const char* text, olk_space** out) {
  if (any_null(text, out)) return null_argument();
  return guarded([&] { *out = new olk_space{olk::parse_space_config(text)}; });
}

olk_status olk_space_load(const char* path, olk_space** out) {
  if (any_null(path, out)) return null_argument();
  return guarded([&] { *out = new olk_space{olk::load_space_config(path)}; });
}

void olk_space_free(olk_space* space) { delete space; }

olk_status olk_space_gamma(const olk_space* space, double* out) {
  if (any_null(space, out)) return null_argument();
  *out = space->cfg.gamma;
  return OLK_OK;
}

olk_status olk_function_parse(const char* text, double domain, olk_function** out) {
  if (any_null(text, out)) return null_argument();
  return guarded([&] { *out = new olk_function{olk::parse_steps(text, domain)}; });
}

olk_status olk_function_load(const char* path, double domain, olk_function** out) {
  if (any_null(path, out)) return null_argument();
  return guarded([&] { *out = new olk_function{olk::load_steps(path, domain)}; });
}

olk_status olk_function_from_pieces(double domain, const double* starts,
                                    const double* lengths, const double* values,
                                    size_t count, olk_function** out) {
  if (out == nullptr || (count > 0 && any_null(starts, lengths, values))) {
    return null_argument();
  }
  return guarded([&] {
    std::vector<olk::Piece> pieces;
    pieces.reserve(count);
    for (size_t i = 0; i < count; ++i) pieces.push_back({starts[i], lengths[i], values[i]});
    *out = new olk_function{olk::StepFunction::make(domain, std::move(pieces))};
  });
}

void olk_function_free(olk_function* fn) { delete fn; }

olk_status olk_eval_phi(const olk_space* space, double u, double* out) {
  if (any_null(space, out)) return null_argument();
  return guarded([&] { *out = space->cfg.phi.phi(u); });
}

olk_status olk_eval_psi(const olk_space* space, double v, double* out) {
  if (any_null(space, out)) return null_argument();
  return guarded([&] { *out = space->cfg.phi.psi(v); });
}

olk_status olk_psi_inverse(const olk_space* space, double w, double* out) {
  if (any_null(space, out)) return null_argument();
  return guarded([&] { *out = olk::psi_inverse(space->cfg.phi, w, space->cfg.tol_root); });
}

olk_status olk_modular(const olk_space* space, const olk_function* x, double* out) {
  if (any_null(space, x, out)) return null_argument();
  return guarded([&] { *out = olk::modular(space->cfg, x->fn); });
}

olk_status olk_luxemburg_norm(const olk_space* space, const olk_function* x, double* out) {
  if (any_null(space, x, out)) return null_argument();
  return guarded([&] { *out = olk::luxemburg_norm(space->cfg, x->fn); });
}

olk_status olk_orlicz_norm(const olk_space* space, const olk_function* x, double* out) {
  if (any_null(space, x, out)) return null_argument();
  return guarded([&] { *out = olk::orlicz_norm(space->cfg, x->fn); });
}

olk_status olk_k_interval(const olk_space* space, const olk_function* x, double* k_star,
                          double* k_double_star) {
  if (any_null(space, x, k_star, k_double_star)) return null_argument();
  return guarded([&] {
    const olk::KInterval k = olk::k_interval(space->cfg, x->fn);
    *k_star = k.k_star;
    *k_double_star = k.k_double_star;
  });
}

olk_status olk_report_norm(const olk_space* space, const olk_function* x,
                           olk_norm_which which, olk_report** out) {
  if (any_null(space, x)) return null_argument();
  olk::NormWhich w = olk::NormWhich::Both;
  switch (which) {
    case OLK_NORM_LUXEMBURG: w = olk::NormWhich::Luxemburg; break;
    case OLK_NORM_ORLICZ: w = olk::NormWhich::Orlicz; break;
    case OLK_NORM_BOTH: w = olk::NormWhich::Both; break;
    default: return fail(OLK_INVALID_ARGUMENT, "unknown norm selector");
  }
  return make_report(out, [&] { return olk::report_norm(space->cfg, x->fn, w); });
}

olk_status olk_report_rearrange(const olk_function* x, olk_report** out) {
  if (x == nullptr) return null_argument();
  return make_report(out, [&] { return olk::report_rearrange(x->fn); });
}

olk_status olk_report_conjugate(const olk_space* space, olk_report** out) {
  if (space == nullptr) return null_argument();
  return make_report(out, [&] { return olk::report_conjugate(space->cfg); });
}

olk_status olk_report_classify(const olk_space* space, olk_report** out) {
  if (space == nullptr) return null_argument();
  return make_report(out, [&] { return olk::report_classify(space->cfg); });
}

olk_status olk_report_predict(const olk_space* space, olk_report** out) {
  if (space == nullptr) return null_argument();
  return make_report(out, [&] { return olk::report_predict(space->cfg); });
}

olk_status olk_report_witness(const olk_space* space, olk_report** out) {
  if (space == nullptr) return null_argument();
  return make_report(out, [&] { return olk::report_witness(space->cfg); });
}

olk_status olk_report_probe(const olk_space* space, uint64_t seed, uint64_t samples,
                            unsigned workers, olk_report** out) {
  if (space == nullptr) return null_argument();
  return make_report(out,
                     [&] { return olk::report_probe(space->cfg, seed, samples, workers); });
}

olk_status olk_report_luns(const olk_space* space, const olk_function* x, uint64_t seed,
                           uint64_t samples, unsigned workers, olk_report** out) {
  if (any_null(space, x)) return null_argument();
  return make_report(
      out, [&] { return olk::report_luns(space->cfg, x->fn, seed, samples, workers); });
}

const char* olk_report_text(const olk_report* report) {
  return report ? report->report.text.c_str() : "";
}

const char* olk_report_json(const olk_report* report) {
  return report ? report->report.json.c_str() : "";
}

void olk_report_free(olk_report* report) { delete report; }

}  // extern "C"
