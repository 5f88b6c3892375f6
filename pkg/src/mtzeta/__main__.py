from mtzeta.cli import main
import sys

sys.exit(main())
