from rest_framework import serializers


class ObjectiveTermSerializer(serializers.Serializer):
    generators = serializers.SerializerMethodField()
    h_b = serializers.FloatField()
    h_bi = serializers.ListField(child=serializers.FloatField())

    def get_generators(self, obj):
        labels = self.context.get('generator_labels', ())
        return [labels[j] for j in obj.generator_indices]


class ObjectiveSerializer(serializers.Serializer):
    """The compiled objective with generator subsets named by label"""
    constant = serializers.FloatField()
    generator_labels = serializers.ListField(child=serializers.CharField())
    representative_labels = serializers.ListField(child=serializers.CharField())
    terms = serializers.SerializerMethodField()

    def get_terms(self, obj):
        return ObjectiveTermSerializer(
            obj.terms, many=True, context={'generator_labels': obj.generator_labels}
        ).data


class EpistemicStateSerializer(serializers.Serializer):
    q = serializers.ListField(child=serializers.IntegerField())
    r = serializers.ListField(child=serializers.FloatField())
