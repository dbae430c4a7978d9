from sumrank.cli import main

raise SystemExit(main())
