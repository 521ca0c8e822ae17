#pragma once

#include "errors.hpp"
#include "nat.hpp"

#include "term_core/eval.hpp"
#include "term_core/lower.hpp"
#include "term_core/parse.hpp"
#include "term_core/print.hpp"
#include "term_core/term.hpp"

#include "combinators/blocks.hpp"
#include "combinators/geometric.hpp"
#include "combinators/primitives.hpp"

#include "counting_compiler/compile.hpp"
#include "counting_compiler/enumerate.hpp"
#include "counting_compiler/expand.hpp"
#include "counting_compiler/ir.hpp"
#include "counting_compiler/spec_io.hpp"
#include "counting_compiler/validate.hpp"

#include "nt_gallery/bundled.hpp"
#include "nt_gallery/oracles.hpp"
#include "nt_gallery/registry.hpp"
#include "nt_gallery/systems.hpp"
#include "nt_gallery/terms.hpp"
#include "nt_gallery/uniform_root.hpp"
#include "nt_gallery/verify.hpp"
