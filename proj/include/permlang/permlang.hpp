#pragma once

#include "permlang/cyclic.hpp"
#include "permlang/enumerate.hpp"
#include "permlang/grammar.hpp"
#include "permlang/nfa_permute.hpp"
#include "permlang/normal_form.hpp"
#include "permlang/oracles.hpp"
#include "permlang/permutation.hpp"
#include "permlang/permuted_grammar.hpp"
#include "permlang/symbols.hpp"
#include "permlang/text_format.hpp"
#include "permlang/tree_shape.hpp"
#include "permlang/verify.hpp"
