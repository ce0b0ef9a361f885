#include "armplan/scenario_io.hpp"

int main(int argc, char** argv) { return armplan::io::run_cli(argc, argv); }
