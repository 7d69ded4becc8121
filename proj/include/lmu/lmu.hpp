#pragma once

#include "lmu/type.hpp"
#include "lmu/term.hpp"
#include "lmu/canonical.hpp"
#include "lmu/syntax.hpp"
#include "lmu/typing.hpp"
#include "lmu/rewrite.hpp"
#include "lmu/reduction.hpp"
#include "lmu/sn.hpp"
#include "lmu/enumerate.hpp"
#include "lmu/lemma_lab.hpp"
