#include "diffmc/cli.hpp"

int main(int argc, char** argv) { return diffmc::cli::run(argc, argv); }
