#include "cli.hpp"

int main(int argc, char** argv) { return homcount::cli::run(argc, argv); }
