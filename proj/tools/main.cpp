#include "goormaghtigh/cli.hpp"

int main(int argc, char** argv) { return gm::cli::run(argc, argv); }
