// Copyright 2026 The kgplot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgplot/providers.h"

#include "kgplot/error.h"

namespace kgplot {

void ProviderSet::require_all() const {
  if (!srl) throw ValidationError("provider set is missing the SRL role");
  if (!events) throw ValidationError("provider set is missing the event inference role");
  if (!infill) throw ValidationError("provider set is missing the infilling role");
  if (!scorer) throw ValidationError("provider set is missing the sequence scoring role");
  if (!similarity) throw ValidationError("provider set is missing the similarity role");
}

}  // namespace kgplot
