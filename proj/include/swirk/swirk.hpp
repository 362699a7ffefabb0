// Copyright (c) 2026 swirk contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "swirk/discretization.hpp"
#include "swirk/fespace.hpp"
#include "swirk/forms.hpp"
#include "swirk/harness.hpp"
#include "swirk/imex.hpp"
#include "swirk/irk.hpp"
#include "swirk/krylov.hpp"
#include "swirk/mesh.hpp"
#include "swirk/multigrid.hpp"
#include "swirk/quadrature.hpp"
#include "swirk/schwarz.hpp"
#include "swirk/tableaux.hpp"
#include "swirk/testcases.hpp"
#include "swirk/util.hpp"
