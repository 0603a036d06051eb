// SPDX-License-Identifier: Apache-2.0
#include "tubelab/errors.hpp"

namespace tubelab {

void require_dims(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace tubelab
