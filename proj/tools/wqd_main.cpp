#include "wqd/cli.hpp"

int main(int argc, char** argv) { return wqd::cli::run(argc, argv); }
