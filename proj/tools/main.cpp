#include "cli.hpp"

int main(int argc, char** argv) { return verigen::cli::run(argc, argv); }
