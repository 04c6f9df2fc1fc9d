from planarmedian.cli import main
import sys

sys.exit(main())
