# pylint: disable=logging-format-interpolation
""" Module for useful logging functionality. """
from logging import handlers
from pathlib import Path
from types import SimpleNamespace
import logging

FORMAT = '%(asctime)s %(name)s: %(levelname)s: %(message)s'
DATE_FORMAT = '%b %d %H:%M:%S'

class Logger:
    """ Implements log handling for the charmoment command line.

    Library modules log through logging.getLogger(__name__), which places them
    under the 'charmoment' logger configured here.

    Attrs:
        lvl (SimpleNamespace): holds attributes for varying log levels and their values.
        logger: the logger instance.
    """
    def __init__(self, name='charmoment', base_dir=None, verbosity=1):
        """Initialize the logger.

        Args:
            name (str): the logger name; also the log file stem.
            base_dir (str): Optional; a directory for a rotating log/<name>.log file.
            verbosity (int): the count of -v flags; each lowers the stream level by 10.
        """
        self.lvl = SimpleNamespace(**logging._nameToLevel)  # pylint: disable=protected-access
        verbosity = max(self.lvl.CRITICAL - (verbosity * 10), self.lvl.DEBUG)

        logging.captureWarnings(True)
        self.logger = logging.getLogger(name)
        self.logger.setLevel(self.lvl.DEBUG)
        # Repeated CLI invocations in one process must not stack handlers
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)

        formatter = logging.Formatter(fmt=FORMAT, datefmt=DATE_FORMAT)

        if base_dir is not None:
            Path(f'{base_dir}/log').mkdir(parents=True, exist_ok=True)
            file_handler = handlers.TimedRotatingFileHandler(f'{base_dir}/log/{name}.log',
                                                             when='d', interval=30,
                                                             backupCount=12)
            # Always log debug messages
            file_handler.setLevel(self.lvl.DEBUG)
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

        # Stream to stderr; stdout carries the command output
        stream_handler = logging.StreamHandler()
        stream_handler.setLevel(verbosity)
        stream_handler.setFormatter(formatter)
        self.logger.addHandler(stream_handler)

    def log(self, msg, lvl=20):
        """Log a message based on the level passed.

        Args:
            lvl (int): The message level to log Default=20 (INFO).
            msg (str): The message to log.
        """
        self.logger.log(lvl, f'{msg}')
