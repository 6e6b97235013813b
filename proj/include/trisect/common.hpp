#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trisect {

enum class Err {
  NonInvolutiveTwin,
  UnorientedRotation,
  DanglingFreeLoop,
  NonTransverseVertex,
  UnknownFamily,
  FamilyNotDisjoint,
  ArcInFamily,
  CurveMeetsSurgeryLocus,
  InvalidBand,
  FamilyCollision,
  EndpointMoved,
  BudgetExhausted,
  ValidationFailed,
  ArcMirrorMismatch,
  InvalidParams,
  NotClosed,
  NotFullCutSystem,
  CapExceeded,
  BasepointOnCurve,
  AmbiguousCorner,
  MissingCorner,
  ArcCountMismatch,
  CutGenusMismatch,
  SyntaxError,
  SchemaError,
  InvariantError,
  InternalError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Err code, const std::string& what) {
  if (!ok) fail(code, what);
}

// Validation outcome for the check-style operations. Failures are entries,
// not exceptions.
struct Report {
  struct Item {
    std::string check;
    bool pass = true;
    std::string detail;
  };
  std::vector<Item> items;

  void add(const std::string& check, bool pass, const std::string& detail = "") {
    items.push_back({check, pass, detail});
  }
  bool ok() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  std::string summary() const;
};

}  // namespace trisect
