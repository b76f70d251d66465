#ifndef MATCHMAKER_MATCHMAKER_HPP
#define MATCHMAKER_MATCHMAKER_HPP

#include "matchmaker/corpus.hpp"
#include "matchmaker/discovery.hpp"
#include "matchmaker/matching.hpp"
#include "matchmaker/pipeline.hpp"
#include "matchmaker/report.hpp"
#include "matchmaker/scheduling.hpp"
#include "matchmaker/seating.hpp"
#include "matchmaker/survey.hpp"
#include "matchmaker/text.hpp"

#endif  // MATCHMAKER_MATCHMAKER_HPP
