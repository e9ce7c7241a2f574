#include "qsz/model.hpp"

#include <cmath>

#include "qsz/errors.hpp"

namespace qsz {

void EngineModel::validate() const {
  if (particle_count < 1) throw DomainError("particle count must be >= 1");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw DomainError("temperature must be positive");
  geometry.validate();
  if (!(solver.scan_margin > 0.0 && solver.scan_margin < 0.5)) throw DomainError("scan margin must be in (0, 0.5)");
  if (!(solver.root_tolerance > 0.0)) throw DomainError("root tolerance must be positive");
}

}  // namespace qsz
