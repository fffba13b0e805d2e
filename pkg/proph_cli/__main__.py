from proph_cli.main import main

raise SystemExit(main())
