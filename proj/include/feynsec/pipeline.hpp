#pragma once

#include <feynsec/decomp.hpp>
#include <feynsec/finite.hpp>
#include <feynsec/graphpoly.hpp>
#include <feynsec/mcint.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace feynsec {

struct Job {
  FeynmanGraph graph;
  Kinematics kin;
  int dim_anchor = 2;
  int order = 0;
};

// Graph file reader. Throws ParseError (with line and column for JSON syntax),
// TopologyError or KinematicsError.
Job parse_job(const std::string& text);
Job load_job(const std::string& path);

struct SectorPiece {
  int sector = 0;  // index into the final sector list
  int order = 0;
  FiniteIntegrand integrand;  // exact part included
};

struct Decomposition {
  ParamIntegral param;
  GeneralIntegral general;
  std::vector<SectorIntegrand> sectors;  // final, monomialised
  int primary = 0;
};

struct PipelineResult {
  EpsSeries series;
  Decomposition decomposition;
  std::vector<SectorPiece> pieces;
  long pole_terms = 0;
  long mc_streams = 0;
};

Decomposition decompose_job(const Job& job, Strategy strategy);

// Pole extraction and expansion only, no sampling.
std::vector<SectorPiece> finite_pieces(const Decomposition& d, int order, long* pole_terms = nullptr);

PipelineResult run_pipeline(const Job& job, Strategy strategy, const MCConfig& mc);

// "order value error" lines, or a JSON object.
std::string format_series(const EpsSeries& s);
std::string format_series_json(const PipelineResult& r);

}  // namespace feynsec
