#ifndef CFGTEST_CFGTEST_HPP
#define CFGTEST_CFGTEST_HPP

#include "cfgtest/grammar.hpp"
#include "cfgtest/grammar_io.hpp"
#include "cfgtest/language.hpp"
#include "cfgtest/linearizer.hpp"
#include "cfgtest/path_graph.hpp"
#include "cfgtest/testset.hpp"
#include "cfgtest/verifier.hpp"

#endif  // CFGTEST_CFGTEST_HPP
