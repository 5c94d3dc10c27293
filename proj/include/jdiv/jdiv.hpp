#pragma once

#include "jdiv/alias.hpp"
#include "jdiv/artifacts.hpp"
#include "jdiv/config.hpp"
#include "jdiv/corpus.hpp"
#include "jdiv/csv.hpp"
#include "jdiv/detect.hpp"
#include "jdiv/diversity.hpp"
#include "jdiv/error.hpp"
#include "jdiv/exports.hpp"
#include "jdiv/graph.hpp"
#include "jdiv/ingest.hpp"
#include "jdiv/node2vec.hpp"
#include "jdiv/pipeline.hpp"
#include "jdiv/rng.hpp"
#include "jdiv/sgns.hpp"
#include "jdiv/similarity.hpp"
#include "jdiv/stats.hpp"
#include "jdiv/topics.hpp"
#include "jdiv/version.hpp"
