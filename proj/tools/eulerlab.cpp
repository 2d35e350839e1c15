#include "eulerlab/interface/cli.hpp"

int main(int argc, char** argv) { return eulerlab::interface::run_cli(argc, argv); }
