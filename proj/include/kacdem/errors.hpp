#pragma once

#include <stdexcept>
#include <string>

namespace kacdem {

enum class Errc {
  InvalidType,
  MixedDatum,
  NotInImage,
  NotInLattice,
  EmptyY,
  BadPrime,
  NotDominant,
  NotMinimalRep,
  MixedHighestWeight,
  LevelMismatch,
  InfiniteParabolic,
  NegativeResult,
  Parse,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidType: return "InvalidType";
    case Errc::MixedDatum: return "MixedDatum";
    case Errc::NotInImage: return "NotInImage";
    case Errc::NotInLattice: return "NotInLattice";
    case Errc::EmptyY: return "EmptyY";
    case Errc::BadPrime: return "BadPrime";
    case Errc::NotDominant: return "NotDominant";
    case Errc::NotMinimalRep: return "NotMinimalRep";
    case Errc::MixedHighestWeight: return "MixedHighestWeight";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::InfiniteParabolic: return "InfiniteParabolic";
    case Errc::NegativeResult: return "NegativeResult";
    case Errc::Parse: return "Parse";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
  Errc code_;

public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Errc code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

// internal invariant; a failure here is a bug, not bad input
inline void check(bool ok, const std::string& msg) {
  if (!ok) fail(Errc::Internal, msg);
}

} // namespace kacdem
