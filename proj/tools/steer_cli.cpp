#include "steer/cli.hpp"

int main(int argc, char** argv) { return steer::cli::run(argc, argv); }
