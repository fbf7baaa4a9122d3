#pragma once

#include "iso/bignat.hpp"
#include "iso/error.hpp"
#include "iso/forest.hpp"
#include "iso/gef.hpp"
#include "iso/graph.hpp"
#include "iso/hc_solver.hpp"
#include "iso/lowerbounds.hpp"
#include "iso/number_theory.hpp"
#include "iso/rankbased.hpp"
#include "iso/rng.hpp"
#include "iso/schemes.hpp"
#include "iso/segment.hpp"
#include "iso/solutions.hpp"
#include "iso/tree_decomposition.hpp"
#include "iso/verify.hpp"
#include "iso/weights.hpp"
