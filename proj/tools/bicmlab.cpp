#include "bicmlab/cli.hpp"

int main(int argc, char** argv) { return bicm::cli::run(argc, argv); }
