from balanced_tamari.cli import main

main()
