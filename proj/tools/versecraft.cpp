#include "versecraft/pipeline.hpp"

int main(int argc, char** argv) { return versecraft::cli_main(argc, argv); }
