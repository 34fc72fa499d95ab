#pragma once

#include "classify.hpp"
#include "cyclo.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "number_theory.hpp"
#include "qfr.hpp"
#include "ring.hpp"
#include "spectral.hpp"
#include "walk.hpp"
