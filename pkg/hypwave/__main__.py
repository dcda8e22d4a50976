from hypwave.cli import main

raise SystemExit(main())
