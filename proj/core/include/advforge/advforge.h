//
// Copyright 2026 The AdvForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Umbrella header for the whole public API.

#ifndef ADVFORGE_ADVFORGE_H_
#define ADVFORGE_ADVFORGE_H_

#include "advforge/attack.h"
#include "advforge/embedding.h"
#include "advforge/error.h"
#include "advforge/evaluation.h"
#include "advforge/matrix.h"
#include "advforge/metrics.h"
#include "advforge/resources.h"
#include "advforge/substitution.h"
#include "advforge/text.h"
#include "advforge/utf8.h"
#include "advforge/victim.h"

#endif  // ADVFORGE_ADVFORGE_H_
