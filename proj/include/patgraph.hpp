#ifndef PATGRAPH_PATGRAPH_HPP
#define PATGRAPH_PATGRAPH_HPP

#include "patgraph/analytics.hpp"
#include "patgraph/brandes.hpp"
#include "patgraph/community.hpp"
#include "patgraph/config.hpp"
#include "patgraph/csv.hpp"
#include "patgraph/embedding.hpp"
#include "patgraph/error.hpp"
#include "patgraph/graph.hpp"
#include "patgraph/graph_io.hpp"
#include "patgraph/hetero_graph.hpp"
#include "patgraph/institutions.hpp"
#include "patgraph/ipc.hpp"
#include "patgraph/line.hpp"
#include "patgraph/parallel.hpp"
#include "patgraph/pipeline.hpp"
#include "patgraph/random.hpp"
#include "patgraph/recommend.hpp"
#include "patgraph/record.hpp"
#include "patgraph/report.hpp"
#include "patgraph/sdne.hpp"
#include "patgraph/sgns.hpp"
#include "patgraph/text.hpp"
#include "patgraph/tsne.hpp"
#include "patgraph/vecmath.hpp"
#include "patgraph/walks.hpp"

#endif
