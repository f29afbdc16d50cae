// Copyright 2026 The elbo-kit Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header.
#pragma once

#include "elbokit/adam.hpp"
#include "elbokit/checkpoint.hpp"
#include "elbokit/dataset.hpp"
#include "elbokit/divergence.hpp"
#include "elbokit/elbo.hpp"
#include "elbokit/error.hpp"
#include "elbokit/gaussian.hpp"
#include "elbokit/grad_check.hpp"
#include "elbokit/linear_gaussian.hpp"
#include "elbokit/matrix.hpp"
#include "elbokit/mlp.hpp"
#include "elbokit/rng.hpp"
#include "elbokit/vae.hpp"
#include "elbokit/version.hpp"
