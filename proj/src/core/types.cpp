#include "core/types.hpp"

namespace kfid {

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::invalid_argument: return "invalid_argument";
    case Status::unknown_model: return "unknown_model";
    case Status::schema_mismatch: return "schema_mismatch";
    case Status::gapless: return "gapless";
    case Status::not_antipodal: return "not_antipodal";
    case Status::linearity: return "linearity";
    case Status::parse: return "parse";
    case Status::io: return "io";
    case Status::unsupported: return "unsupported";
    case Status::verification: return "verification";
  }
  return "unknown";
}

}  // namespace kfid
