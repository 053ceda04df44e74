#pragma once

#include <cexplain/check.hpp>
#include <cexplain/cli.hpp>
#include <cexplain/cnf.hpp>
#include <cexplain/error.hpp>
#include <cexplain/eval.hpp>
#include <cexplain/explain.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/ground.hpp>
#include <cexplain/interest.hpp>
#include <cexplain/parse.hpp>
#include <cexplain/print.hpp>
#include <cexplain/provenance.hpp>
#include <cexplain/render.hpp>
#include <cexplain/solver.hpp>
#include <cexplain/theory.hpp>
#include <cexplain/tree.hpp>
#include <cexplain/verify.hpp>
