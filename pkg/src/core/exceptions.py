"""Exceções customizadas do harness"""

class HarnessError(Exception):
    """Exceção base do sistema"""
    pass

class InputError(HarnessError):
    """Entrada malformada para um subject (não é FAIL de teste)"""
    pass

class ConfigError(HarnessError):
    """Erro de configuração: ids desconhecidos, relação/subject trocados"""
    pass

class FixtureError(ConfigError):
    """Fixture inexistente ou arquivo de fixture inválido"""
    pass

class PhaseViolation(HarnessError):
    """Variante que escreve dados chamada na fase de produção"""
    pass

class OracleScopeError(HarnessError):
    """Grafo grande demais para o oráculo exaustivo"""
    pass

class UndefinedRatioError(HarnessError):
    """Razão oh sem sentido (custo da fonte zero ou veredito inaplicável)"""
    pass
