#pragma once

#include "episodeseq/candidates.hpp"
#include "episodeseq/error.hpp"
#include "episodeseq/events.hpp"
#include "episodeseq/hmm.hpp"
#include "episodeseq/io.hpp"
#include "episodeseq/mdl.hpp"
#include "episodeseq/occurrences.hpp"
#include "episodeseq/parallel.hpp"
#include "episodeseq/score.hpp"
#include "episodeseq/synth.hpp"
#include "episodeseq/textpipe.hpp"
