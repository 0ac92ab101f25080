// Copyright 2026 The glt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef GLT_GLT_HPP
#define GLT_GLT_HPP

#include "glt/error.hpp"
#include "glt/identification.hpp"
#include "glt/io.hpp"
#include "glt/linalg.hpp"
#include "glt/matrix.hpp"
#include "glt/overfit.hpp"
#include "glt/postprocess.hpp"
#include "glt/random.hpp"
#include "glt/rotation.hpp"
#include "glt/simulate.hpp"
#include "glt/structure.hpp"

#define GLT_VERSION_STRING "0.1.0"

#endif // GLT_GLT_HPP
