import sys

from recconv.cli import main

sys.exit(main())
