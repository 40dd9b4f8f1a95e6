import learnlib.model.NeuralModel;
import learnlib.train.GradientTrainer;

public class Main {
    public static void main(String[] args) {
        NeuralModel model = new NeuralModel(3);
        GradientTrainer trainer = new GradientTrainer(0.01);
        trainer.fit(model);
    }
}
