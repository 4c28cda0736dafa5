class FhsfError(Exception):
    """Базовое исключение приложения."""


class ImageFormatError(FhsfError, ValueError):
    """Файл изображения не удалось разобрать."""


class PpmHeaderError(ImageFormatError):
    pass


class PpmMaxvalError(ImageFormatError):
    pass


class PpmTruncatedError(ImageFormatError):
    pass


class DimensionMismatchError(FhsfError, ValueError):
    pass


class DegenerateImageError(FhsfError, ValueError):
    """Метрика не определена для данного изображения (нулевой знаменатель)."""


class ParamsError(FhsfError, ValueError):
    """Неизвестный фильтр, параметры не той формы или вне допустимых границ."""


class ConfigError(FhsfError, ValueError):
    pass
