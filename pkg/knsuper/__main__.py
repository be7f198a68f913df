from knsuper.main import main

main()
