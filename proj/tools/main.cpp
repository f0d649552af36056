#include "cli_app.hpp"

int main(int argc, char** argv) { return qdl_cli::run(argc, argv); }
