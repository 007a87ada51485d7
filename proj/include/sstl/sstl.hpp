#pragma once

// Umbrella header for the whole toolkit: formulas and parsing, dense- and
// tick-time evaluation, the guard-atom translation, automaton construction,
// and finite-state verification.

#include "sstl/buchi.hpp"
#include "sstl/discretize.hpp"
#include "sstl/error.hpp"
#include "sstl/eval_ltlp.hpp"
#include "sstl/formula.hpp"
#include "sstl/interval.hpp"
#include "sstl/lasso.hpp"
#include "sstl/models.hpp"
#include "sstl/monitor.hpp"
#include "sstl/nnf.hpp"
#include "sstl/parser.hpp"
#include "sstl/predicate.hpp"
#include "sstl/printer.hpp"
#include "sstl/product.hpp"
#include "sstl/quantize.hpp"
#include "sstl/rational.hpp"
#include "sstl/report.hpp"
#include "sstl/sih.hpp"
#include "sstl/stl_oracle.hpp"
#include "sstl/system.hpp"
#include "sstl/trace.hpp"
#include "sstl/translate.hpp"
