#include "persistor/cli.hpp"

int main(int argc, char** argv) { return persistor::run_cli(argc, argv); }
