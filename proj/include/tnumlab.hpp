// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tnumlab/arith.hpp"
#include "tnumlab/bench.hpp"
#include "tnumlab/bitops.hpp"
#include "tnumlab/error.hpp"
#include "tnumlab/format.hpp"
#include "tnumlab/galois.hpp"
#include "tnumlab/json.hpp"
#include "tnumlab/ops.hpp"
#include "tnumlab/precision.hpp"
#include "tnumlab/sample.hpp"
#include "tnumlab/tnum.hpp"
#include "tnumlab/verify.hpp"
