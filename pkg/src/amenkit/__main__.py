import sys

from amenkit.cli import main

sys.exit(main())
