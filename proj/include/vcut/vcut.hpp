#pragma once

#include "vcut/bench.hpp"
#include "vcut/bits.hpp"
#include "vcut/conn_oracle.hpp"
#include "vcut/connectivity.hpp"
#include "vcut/cut_detector.hpp"
#include "vcut/detectors.hpp"
#include "vcut/dsu.hpp"
#include "vcut/error.hpp"
#include "vcut/expander.hpp"
#include "vcut/generators.hpp"
#include "vcut/graph.hpp"
#include "vcut/hit_miss.hpp"
#include "vcut/io.hpp"
#include "vcut/labels.hpp"
#include "vcut/left_right.hpp"
#include "vcut/lr_tree.hpp"
#include "vcut/oracle.hpp"
#include "vcut/properties.hpp"
#include "vcut/ratio.hpp"
#include "vcut/report.hpp"
#include "vcut/serialize.hpp"
#include "vcut/set_array.hpp"
#include "vcut/sparse_cut.hpp"
#include "vcut/sparsify.hpp"
#include "vcut/ted.hpp"
#include "vcut/vertex_set.hpp"
