#pragma once

#include <string>

namespace fdz {

enum class Verdict { yes, no, unknown, not_applicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

inline Verdict from_bool(bool b) { return b ? Verdict::yes : Verdict::no; }

}  // namespace fdz
