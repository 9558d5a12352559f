import logging

logging.root.setLevel(logging.DEBUG)
