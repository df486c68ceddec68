// Job orchestration: resolves a validated ScanJob against the model zoo,
// evaluates it (fanning grid work out to the worker pool) and emits the
// requested artifacts plus a text summary.

#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"

namespace kfid {

struct JobResult {
  std::vector<std::string> artifacts;  // paths written, in output order
  std::string summary;                 // always present; also the report body
};

JobResult run_job(const ScanJob& job);

}  // namespace kfid
