#include "modp_gl2.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "report.hpp"

struct modp_session {
  modp::Scenario scenario;
};

struct modp_report {
  modp::Report report;
};

namespace {

thread_local std::string g_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
modp_status guard(Fn&& fn) {
  g_error.clear();
  try {
    fn();
    return MODP_OK;
  } catch (const modp::ConfigError& e) {
    g_error = e.what();
    return MODP_ERR_CONFIG;
  } catch (const modp::DomainError& e) {
    g_error = e.what();
    return MODP_ERR_DOMAIN;
  } catch (const modp::PrecisionError& e) {
    g_error = e.what();
    return MODP_ERR_PRECISION;
  } catch (const modp::InstabilityError& e) {
    g_error = e.what();
    return MODP_ERR_INSTABILITY;
  } catch (const nlohmann::json::exception& e) {
    g_error = e.what();
    return MODP_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return MODP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return MODP_ERR_INTERNAL;
  }
}

modp_status bad_arg(const char* what) {
  g_error = what;
  return MODP_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

const char* modp_version(void) { return "1.0.0"; }

const char* modp_last_error(void) { return g_error.c_str(); }

modp_status modp_session_create(const char* scenario_json, modp_session** out) {
  if (!scenario_json || !out) return bad_arg("null argument");
  *out = nullptr;
  return guard([&] {
    auto sc = modp::Scenario::from_json(nlohmann::json::parse(scenario_json));
    sc.validate();
    *out = new modp_session{std::move(sc)};
  });
}

void modp_session_destroy(modp_session* s) { delete s; }

modp_status modp_session_scenario(const modp_session* s, char** out_json) {
  if (!s || !out_json) return bad_arg("null argument");
  return guard([&] { *out_json = dup(s->scenario.to_json().dump()); });
}

modp_status modp_run_suite(const modp_session* s, const char* suite, modp_report** out) {
  if (!s || !suite || !out) return bad_arg("null argument");
  *out = nullptr;
  return guard([&] { *out = new modp_report{modp::run_suite(suite, s->scenario)}; });
}

modp_status modp_run_command(const modp_session* s, const char* command, const char* op, const char* args_json,
                             modp_report** out) {
  if (!s || !command || !op || !out) return bad_arg("null argument");
  *out = nullptr;
  return guard([&] {
    auto args = args_json ? nlohmann::json::parse(args_json) : nlohmann::json::object();
    *out = new modp_report{modp::run_command(command, op, s->scenario, args)};
  });
}

int modp_report_passed(const modp_report* r) { return r && r->report.passed() ? 1 : 0; }

size_t modp_report_check_count(const modp_report* r) { return r ? r->report.checks.size() : 0; }

modp_status modp_report_emit(const modp_report* r, const char* format, char** out) {
  if (!r || !format || !out) return bad_arg("null argument");
  *out = nullptr;
  return guard([&] { *out = dup(modp::emit(r->report, modp::parse_format(format))); });
}

void modp_report_destroy(modp_report* r) { delete r; }

void modp_string_free(char* s) { std::free(s); }

}  // extern "C"
