#pragma once

// Umbrella header for the factored-graph library.

#include "factgraph/adjacency.hpp"
#include "factgraph/base_graph.hpp"
#include "factgraph/cliques.hpp"
#include "factgraph/compiled.hpp"
#include "factgraph/component.hpp"
#include "factgraph/doc.hpp"
#include "factgraph/errors.hpp"
#include "factgraph/formula.hpp"
#include "factgraph/kov.hpp"
#include "factgraph/lfmis.hpp"
#include "factgraph/materialize.hpp"
#include "factgraph/ntm.hpp"
#include "factgraph/parser.hpp"
#include "factgraph/reach.hpp"
#include "factgraph/tm.hpp"
#include "factgraph/tm_compile.hpp"
#include "factgraph/vertex.hpp"
#include "factgraph/writer.hpp"
