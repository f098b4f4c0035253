from ringlab.cli import main

main()
